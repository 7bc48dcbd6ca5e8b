#include "necklace/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "necklace/errors.hpp"

namespace necklace {

std::string version() { return NECKLACE_VERSION; }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

std::vector<std::string> metadata_lines(const std::string& command, const json& config) {
    return {"necklace " + version(), "command: " + command, "config_hash: " + config_hash(config)};
}

json metadata_json(const std::string& command, const json& config) {
    return {{"version", version()}, {"command", command}, {"config_hash", config_hash(config)}};
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw GridMismatch("csv row width does not match the header");
    rows_.push_back(cells);
}

void CsvTable::write(std::ostream& os, const std::vector<std::string>& metadata) const {
    for (const auto& m : metadata) os << "# " << m << "\r\n";
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
        os << "\r\n";
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw IoError("failed writing " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void to_json(json& j, const DelaunayProfile& p) {
    j = {{"a", p.a}, {"tol", p.tol}, {"T", p.T}, {"V", p.V}, {"Ia", p.Ia},
         {"s", p.s}, {"f", p.f},     {"fp", p.fp}, {"fpp", p.fpp}};
}

void from_json(const json& j, DelaunayProfile& p) {
    j.at("a").get_to(p.a);
    j.at("tol").get_to(p.tol);
    j.at("T").get_to(p.T);
    j.at("V").get_to(p.V);
    j.at("Ia").get_to(p.Ia);
    j.at("s").get_to(p.s);
    j.at("f").get_to(p.f);
    j.at("fp").get_to(p.fp);
    j.at("fpp").get_to(p.fpp);
    if (p.f.size() != p.s.size() || p.fp.size() != p.s.size() || p.fpp.size() != p.s.size())
        throw GridMismatch("profile arrays differ in length");
}

void to_json(json& j, const ConformalChart& c) {
    j = {{"a", c.a}, {"tol", c.tol}, {"tau", c.tau}, {"T", c.T}, {"N", c.N}, {"t", c.t},
         {"x", c.x}, {"xp", c.xp},   {"z", c.z},     {"zp", c.zp}, {"p", c.p}};
}

void from_json(const json& j, ConformalChart& c) {
    j.at("a").get_to(c.a);
    j.at("tol").get_to(c.tol);
    j.at("tau").get_to(c.tau);
    j.at("T").get_to(c.T);
    j.at("N").get_to(c.N);
    j.at("t").get_to(c.t);
    j.at("x").get_to(c.x);
    j.at("xp").get_to(c.xp);
    j.at("z").get_to(c.z);
    j.at("zp").get_to(c.zp);
    j.at("p").get_to(c.p);
    const std::size_t n = static_cast<std::size_t>(c.N) + 1;
    for (const auto* v : {&c.t, &c.x, &c.xp, &c.z, &c.zp, &c.p})
        if (v->size() != n) throw GridMismatch("chart arrays must hold N + 1 samples");
}

void to_json(json& j, const SymmetricField& f) {
    std::vector<double> t(f.N());
    for (int i = 0; i < f.N(); ++i) t[i] = -f.tau() + 2.0 * f.tau() * i / f.N();
    json modes = json::array();
    for (int k = 0; k <= f.kmax(); ++k) modes.push_back(f.mode(k));
    j = {{"kmax", f.kmax()}, {"N", f.N()}, {"tau", f.tau()}, {"even_y2", f.even_y2()}, {"t", t}, {"modes", modes}};
}

void from_json(const json& j, SymmetricField& f) {
    SymmetricField out(j.at("kmax").get<int>(), j.at("N").get<int>(), j.at("tau").get<double>(),
                       j.at("even_y2").get<bool>());
    const auto& modes = j.at("modes");
    if (modes.size() != static_cast<std::size_t>(out.kmax()) + 1) throw GridMismatch("field needs kmax + 1 modes");
    for (int k = 0; k <= out.kmax(); ++k) out.set_mode(k, modes[k].get<std::vector<double>>());
    f = std::move(out);
}

void to_json(json& j, const SurfacePatch& p) {
    j = {{"kind", to_string(p.kind)}, {"a", p.a}, {"T", p.T}, {"n", p.n}, {"R", p.R}, {"perturbed", p.h != nullptr}};
}

void to_json(json& j, const CoulombResult& r) {
    j = {{"value", r.value},
         {"n", r.n},
         {"theta", r.y[0]},
         {"v", r.y[1]},
         {"blocks", r.breakdown},
         {"error_estimate", r.error_estimate}};
}

void to_json(json& j, const ExpansionReport& r) {
    json rows = json::array();
    for (const auto& e : r.rows)
        rows.push_back({{"n", e.n}, {"R", e.R}, {"max_error", e.max_error}, {"phi_fit", e.phi_fit}, {"phi_exact", e.phi_exact}});
    j = {{"rows", rows}, {"exponent", r.exponent}};
}

void to_json(json& j, const MomentTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back({{"name", r.name}, {"value", r.value}, {"expected", r.expected}});
    j = {{"rows", rows}, {"tail_bound", t.tail_bound}};
}

void to_json(json& j, const ReductionState& s) {
    j = {{"a", s.a},
         {"n", s.n},
         {"gamma", s.gamma},
         {"lambda", s.lambda},
         {"c", s.c},
         {"d", s.d},
         {"residual", s.residual},
         {"final_c", s.final_c},
         {"final_residual", s.final_residual},
         {"iterations", s.iterations},
         {"converged", s.converged},
         {"h_norm", s.h_norm()},
         {"h", s.h}};
}

void to_json(json& j, const MassMap& m) {
    j = {{"a", m.a},
         {"n", m.n},
         {"gamma", m.gamma},
         {"volume", m.volume},
         {"m", m.m},
         {"mode", m.mode == MassMode::Full ? "full" : "leading"}};
}

}  // namespace necklace
