#include "khmflow/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "khmflow/errors.hpp"

namespace khm::io {

namespace {

constexpr char kMagic[4] = {'K', 'H', 'M', '1'};

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in, const char* what) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError(std::string("snapshot truncated reading ") + what);
    return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const spectral::PhysicalField& field,
                    double nu, double t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open snapshot for writing: " + path.string());
    out.write(kMagic, 4);
    write_raw(out, std::uint32_t(field.grid().n));
    write_raw(out, nu);
    write_raw(out, t);
    for (int c = 0; c < 3; ++c)
        out.write(reinterpret_cast<const char*>(field.component(c).data()),
                  std::streamsize(field.component(c).size() * sizeof(double)));
    if (!out) throw IoError("short write on snapshot: " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const spectral::SpectralField& field,
                    double nu, double t) {
    write_snapshot(path, field.to_physical(), nu, t);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad snapshot magic in " + path.string());
    const auto n = read_raw<std::uint32_t>(in, "grid size");
    if (n < 8 || n % 2 != 0 || n > 4096) throw IoError("implausible grid size in " + path.string());
    Snapshot snap;
    snap.nu = read_raw<double>(in, "nu");
    snap.t = read_raw<double>(in, "t");
    snap.field = spectral::PhysicalField(spectral::GridSpec(int(n)));
    for (int c = 0; c < 3; ++c) {
        auto& vals = snap.field.component(c);
        in.read(reinterpret_cast<char*>(vals.data()), std::streamsize(vals.size() * sizeof(double)));
        if (!in) throw IoError("snapshot truncated reading values: " + path.string());
    }
    return snap;
}

spectral::SpectralField Snapshot::to_spectral(double dealias_fraction) const {
    spectral::PhysicalField p(spectral::GridSpec(field.grid().n, dealias_fraction));
    for (int c = 0; c < 3; ++c) p.component(c) = field.component(c);
    return spectral::SpectralField::from_physical(p);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonLine& JsonLine::add(const char* key, double v) {
    body_ += body_.empty() ? "{" : ",";
    body_ += '"';
    body_ += key;
    body_ += "\":";
    body_ += format_double(v);
    return *this;
}

JsonLine& JsonLine::add(const char* key, long long v) {
    body_ += body_.empty() ? "{" : ",";
    body_ += '"';
    body_ += key;
    body_ += "\":";
    body_ += std::to_string(v);
    return *this;
}

JsonLine& JsonLine::add(const char* key, const std::string& v) {
    body_ += body_.empty() ? "{" : ",";
    body_ += '"';
    body_ += key;
    body_ += "\":\"";
    body_ += v;
    body_ += '"';
    return *this;
}

JsonLine& JsonLine::add_array(const char* key, const std::vector<double>& v) {
    body_ += body_.empty() ? "{" : ",";
    body_ += '"';
    body_ += key;
    body_ += "\":[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(v[i]);
    }
    body_ += ']';
    return *this;
}

std::string JsonLine::str() const { return (body_.empty() ? "{" : body_) + "}"; }

namespace {

std::string schema_header() { return JsonLine().add("schema", 1LL).str(); }

std::vector<nlohmann::json> parse_ndjson(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<nlohmann::json> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw IoError("malformed NDJSON line in " + path.string());
        if (first && j.contains("schema")) {
            first = false;
            continue;
        }
        first = false;
        rows.push_back(std::move(j));
    }
    return rows;
}

}  // namespace

void write_ledger(const std::filesystem::path& path, const solver::Trajectory& traj) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open ledger for writing: " + path.string());
    out << schema_header() << '\n';
    for (const auto& row : traj.ledger) {
        out << JsonLine()
                   .add("t", row.t)
                   .add("l2sq", row.l2sq)
                   .add("h1sq", row.h1sq)
                   .add("fv", row.fv)
                   .str()
            << '\n';
    }
}

std::vector<solver::LedgerRow> read_ledger(const std::filesystem::path& path) {
    std::vector<solver::LedgerRow> rows;
    for (const auto& j : parse_ndjson(path))
        rows.push_back({j.at("t").get<double>(), j.at("l2sq").get<double>(),
                        j.at("h1sq").get<double>(), j.at("fv").get<double>()});
    return rows;
}

void write_records(const std::filesystem::path& path, const std::vector<stats::StructureRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open records for writing: " + path.string());
    out << schema_header() << '\n';
    for (const auto& r : records) {
        out << JsonLine()
                   .add("t", r.t)
                   .add("ell", r.ell)
                   .add("s_par", r.s_par)
                   .add("s_zero", r.s_zero)
                   .add("s3", r.s3)
                   .add("j", r.j_val)
                   .add("g", r.g_val)
                   .add("h", r.h_val)
                   .add("fbar", r.fbar)
                   .add("ftilde", r.ftilde)
                   .add("gamma_bar", r.gamma_bar)
                   .str()
            << '\n';
    }
}

std::vector<stats::StructureRecord> read_records(const std::filesystem::path& path) {
    std::vector<stats::StructureRecord> out;
    for (const auto& j : parse_ndjson(path)) {
        stats::StructureRecord r;
        r.t = j.at("t").get<double>();
        r.ell = j.at("ell").get<double>();
        r.s_par = j.at("s_par").get<double>();
        r.s_zero = j.at("s_zero").get<double>();
        r.s3 = j.at("s3").get<double>();
        r.j_val = j.at("j").get<double>();
        r.g_val = j.at("g").get<double>();
        r.h_val = j.at("h").get<double>();
        r.fbar = j.at("fbar").get<double>();
        r.ftilde = j.at("ftilde").get<double>();
        r.gamma_bar = j.at("gamma_bar").get<double>();
        out.push_back(r);
    }
    return out;
}

}  // namespace khm::io
