#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "khmflow/field.hpp"
#include "khmflow/solver.hpp"
#include "khmflow/stats.hpp"

namespace khm::io {

// Snapshot file: magic "KHM1", little-endian u32 n, f64 nu, f64 t, then
// 3 n^3 f64 physical values, component-major with index (i,j,k), k fastest.
void write_snapshot(const std::filesystem::path& path, const spectral::PhysicalField& field,
                    double nu, double t);
void write_snapshot(const std::filesystem::path& path, const spectral::SpectralField& field,
                    double nu, double t);

struct Snapshot {
    spectral::PhysicalField field;
    double nu = 0.0;
    double t = 0.0;
    spectral::SpectralField to_spectral(double dealias_fraction = 2.0 / 3.0) const;
};
Snapshot read_snapshot(const std::filesystem::path& path);

// Single JSON object serialized with fixed key order and %.17g doubles, so
// identical inputs yield identical bytes.
class JsonLine {
  public:
    JsonLine& add(const char* key, double v);
    JsonLine& add(const char* key, long long v);
    JsonLine& add(const char* key, const std::string& v);
    JsonLine& add_array(const char* key, const std::vector<double>& v);
    std::string str() const;

  private:
    std::string body_;
};

std::string format_double(double v);

// NDJSON files carry a {"schema":1} header line.
void write_ledger(const std::filesystem::path& path, const solver::Trajectory& traj);
std::vector<solver::LedgerRow> read_ledger(const std::filesystem::path& path);

void write_records(const std::filesystem::path& path, const std::vector<stats::StructureRecord>& records);
std::vector<stats::StructureRecord> read_records(const std::filesystem::path& path);

}  // namespace khm::io
