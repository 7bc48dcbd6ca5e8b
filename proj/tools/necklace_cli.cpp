#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "necklace/asymptotics.hpp"
#include "necklace/errors.hpp"
#include "necklace/geometry.hpp"
#include "necklace/io.hpp"
#include "necklace/nonlocal.hpp"
#include "necklace/profile.hpp"
#include "necklace/reduction.hpp"

using namespace necklace;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || !std::isfinite(v)) throw DomainError("invalid number '" + s + "' for " + what);
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    const double v = parse_double(s, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("expected an integer for " + what + ", got " + s);
    return static_cast<int>(v);
}

// "start:stop:step" (inclusive) or a comma separated list
std::vector<double> parse_values(const std::string& spec, const std::string& what) {
    const auto parts = split(spec, ':');
    std::vector<double> out;
    if (parts.size() == 3) {
        const double lo = parse_double(parts[0], what), hi = parse_double(parts[1], what);
        const double step = parse_double(parts[2], what);
        if (!(step > 0.0) || hi < lo) throw DomainError("range for " + what + " needs step > 0 and stop >= start");
        const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) {
            // snap to 12 significant digits so 0.05:0.45:0.1 yields 0.15 rather than 0.15000000000000002
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", lo + step * static_cast<double>(i));
            out.push_back(std::stod(buf));
        }
    } else if (parts.size() == 1) {
        for (const auto& p : split(spec, ',')) out.push_back(parse_double(p, what));
    } else {
        throw DomainError("range for " + what + " must be start:stop:step");
    }
    if (out.empty()) throw DomainError("empty value list for " + what);
    return out;
}

std::vector<int> parse_ints(const std::string& spec, const std::string& what) {
    std::vector<int> out;
    for (double v : parse_values(spec, what)) {
        if (v != std::floor(v)) throw DomainError("expected integers for " + what);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// "AxB[xC]"
std::vector<int> parse_grid(const std::string& spec, std::size_t dims) {
    std::vector<int> out;
    for (const auto& p : split(spec, 'x')) out.push_back(parse_int(p, "--grid"));
    if (out.size() != dims) throw DomainError("--grid expects " + std::to_string(dims) + " sizes separated by 'x'");
    for (int v : out)
        if (v <= 0) throw DomainError("--grid sizes must be positive");
    return out;
}

double check_neck(double a) {
    if (!(a > 0.0 && a <= 0.5)) throw DomainError("--a must lie in (0, 0.5]");
    return a;
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}
    std::ostream& stream() { return path_.empty() ? std::cout : buffer_; }
    void close() {
        if (!path_.empty()) write_text(path_, buffer_.str());
    }

private:
    std::string path_;
    std::ostringstream buffer_;
};

void emit_json(const json& j, const std::string& path) {
    Output out(path);
    out.stream() << j.dump(2) << "\n";
    out.close();
}

void emit_csv(const CsvTable& table, const std::vector<std::string>& meta, const std::string& path) {
    Output out(path);
    table.write(out.stream(), meta);
    out.close();
}

struct Command {
    std::string name;
    std::string help;
    json defaults;
    std::function<void(const json&)> run;
};

void cmd_profile(const json& cfg) {
    const double a = check_neck(cfg["a"].get<double>());
    const double tol = cfg["tol"].get<double>();
    const DelaunayProfile p = solve_profile(a, tol, cfg["grid"].get<int>());
    const ConformalChart c = build_chart(a, tol, cfg["chart_N"].get<int>());
    json j = {{"meta", metadata_json("profile", cfg)},
              {"profile", p},
              {"chart", c},
              {"Ia_conformal", compute_Ia_conformal(c)},
              {"conserved_residual", conserved_residual(p)},
              {"isothermal_residual", isothermal_residual(c)}};
    emit_json(j, cfg["out"].get<std::string>());
}

void cmd_ia_scan(const json& cfg) {
    CsvTable table({"a", "T", "V", "Ia"});
    for (double a : parse_values(cfg["a"].get<std::string>(), "--a")) {
        const DelaunayProfile p = solve_profile(check_neck(a), cfg["tol"].get<double>());
        table.add_row({a, p.T, p.V, p.Ia});
    }
    emit_csv(table, metadata_lines("ia-scan", cfg), cfg["out"].get<std::string>());
}

void cmd_coil_mesh(const json& cfg) {
    const double a = check_neck(cfg["a"].get<double>());
    const int n = cfg["n"].get<int>();
    if (n < 2) throw DomainError("--n must be at least 2");
    const auto grid = parse_grid(cfg["grid"].get<std::string>(), 2);
    const std::string path = cfg["out"].get<std::string>();
    if (path.empty()) throw DomainError("coil-mesh needs --out");
    const SurfacePatch patch = build_coil(solve_profile(a, cfg["tol"].get<double>()), n);
    check_embedding(patch);
    const Mesh mesh = triangulate(patch, grid[0], grid[1]);
    write_obj(mesh, path, metadata_lines("coil-mesh", cfg));
    const MeshStats s = mesh.stats();
    std::printf("vertices %zu faces %zu euler %ld\n", s.vertices, s.faces, s.euler());
}

void cmd_curvature_check(const json& cfg) {
    const DelaunayProfile p = solve_profile(check_neck(cfg["a"].get<double>()), cfg["tol"].get<double>());
    const auto grid = parse_grid(cfg["grid"].get<std::string>(), 2);
    const ExpansionReport r = curvature_expansion_check(p, parse_ints(cfg["n"].get<std::string>(), "--n"), grid[0], grid[1]);
    CsvTable table({"n", "R", "max_error", "phi_fit", "phi_exact"});
    for (const auto& row : r.rows) table.add_row({double(row.n), row.R, row.max_error, row.phi_fit, row.phi_exact});
    auto meta = metadata_lines("curvature-check", cfg);
    meta.push_back("exponent: " + format_number(r.exponent));
    emit_csv(table, meta, cfg["out"].get<std::string>());
}

void cmd_nonlocal_check(const json& cfg) {
    const DelaunayProfile p = solve_profile(check_neck(cfg["a"].get<double>()), cfg["tol"].get<double>());
    NonlocalOptions opt;
    const auto grid = parse_grid(cfg["grid"].get<std::string>(), 3);
    opt.block = {grid[0], grid[1], grid[2]};
    opt.error_estimate = true;
    opt.threads = cfg["threads"].get<int>();
    const auto ns = parse_ints(cfg["n"].get<std::string>(), "--n");
    CsvTable table({"n", "ln_n", "potential", "error_estimate"});
    std::vector<double> x, y;
    for (int n : ns) {
        const CoulombResult r = potential_coil(p, n, cfg["theta"].get<double>(), cfg["v"].get<double>(), opt);
        x.push_back(std::log(double(n)));
        y.push_back(r.value);
        table.add_row({double(n), x.back(), r.value, r.error_estimate});
    }
    auto meta = metadata_lines("nonlocal-check", cfg);
    if (x.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
        meta.push_back("slope: " + format_number(sxy / sxx));
    }
    meta.push_back("two_V_over_T: " + format_number(2.0 * p.V / p.T));
    emit_csv(table, meta, cfg["out"].get<std::string>());
}

ReductionOptions reduction_options(const json& cfg) {
    ReductionOptions o;
    o.solver_N = cfg["grid"].get<int>();
    o.kmax = cfg["kmax"].get<int>();
    o.tol = cfg["tol"].get<double>();
    o.threads = cfg["threads"].get<int>();
    if (o.solver_N < 16 || o.solver_N % 2) throw DomainError("--grid must be an even t-grid size >= 16");
    if (o.kmax < 2) throw DomainError("--kmax must be at least 2");
    return o;
}

void cmd_reduce(const json& cfg) {
    const double a = check_neck(cfg["a"].get<double>());
    const int n = cfg["n"].get<int>();
    if (n < 16) throw DomainError("reduce needs --n >= 16");
    const Reduction red(a, n, reduction_options(cfg));
    ReductionState st = red.solve_gamma();
    red.finalize(st);
    const double vol = red.volume(st.h);
    const LeadingCoupling lead = red.leading();
    json j = {{"meta", metadata_json("reduce", cfg)},
              {"a", a},
              {"n", n},
              {"gamma", st.gamma},
              {"gamma_leading", lead.gamma},
              {"lambda", st.lambda},
              {"c", st.final_c},
              {"residual", st.final_residual},
              {"iteration_c", st.c},
              {"iteration_residual", st.residual},
              {"h_norm", st.h_norm()},
              {"iterations", st.iterations},
              {"volume", vol},
              {"volume_ratio", vol / (n * red.profile().V)},
              {"m", st.gamma * vol},
              {"h", st.h}};
    emit_json(j, cfg["out"].get<std::string>());
    const std::string trace = cfg["trace"].get<std::string>();
    if (!trace.empty()) {
        CsvTable t({"iteration", "gamma", "step_norm", "omega", "c", "d", "residual"});
        for (const auto& r : st.history)
            t.add_row({double(r.iteration), r.gamma, r.step_norm, r.omega, r.c, r.d, r.residual});
        emit_csv(t, metadata_lines("reduce", cfg), trace);
    }
}

void cmd_mass_map(const json& cfg) {
    const double m = cfg["m"].get<double>();
    const double lo = cfg["a_lo"].get<double>(), hi = cfg["a_hi"].get<double>();
    int n = cfg["n"].get<int>();
    if (n == 0) n = std::max(16, suggest_blocks(m, solve_profile(0.5 * (lo + hi))));
    const MassMode mode = cfg["leading"].get<bool>() ? MassMode::Leading : MassMode::Full;
    ReductionOptions o = reduction_options(cfg);
    o.tol = 1e-7;
    const NeckParameter np = find_neck_for_mass(m, n, lo, hi, mode, o, cfg["tol"].get<double>());
    json j = {{"meta", metadata_json("mass-map", cfg)},
              {"target_m", m},
              {"a", np.a},
              {"n", np.map.n},
              {"gamma", np.map.gamma},
              {"volume", np.map.volume},
              {"m", np.map.m},
              {"mode", mode == MassMode::Full ? "full" : "leading"},
              {"evaluations", np.evaluations}};
    emit_json(j, cfg["out"].get<std::string>());
}

void cmd_appendix(const json& cfg) {
    const MomentTable t = sech_moments(cfg["horizon"].get<double>());
    CsvTable table({"name", "value", "expected"});
    for (const auto& r : t.rows) table.add_row({r.name, format_number(r.value), format_number(r.expected)});
    std::vector<double> as, Ias;
    for (double a : parse_values(cfg["a"].get<std::string>(), "--a")) {
        as.push_back(check_neck(a));
        Ias.push_back(solve_profile(a, cfg["tol"].get<double>()).Ia);
    }
    const SlopeFit fit = ia_slope_check(as, Ias);
    table.add_row({std::string("Ia_slope"), format_number(fit.slope), format_number(2.0)});
    auto meta = metadata_lines("appendix", cfg);
    meta.push_back("tail_bound: " + format_number(t.tail_bound));
    emit_csv(table, meta, cfg["out"].get<std::string>());
}

std::vector<Command> commands() {
    const json common = {{"tol", kDefaultTol}, {"threads", 1}, {"out", ""}};
    auto with = [&](json extra) {
        json j = common;
        j.update(extra);
        return j;
    };
    return {
        {"profile", "Delaunay profile and isothermal chart as JSON", with({{"a", 0.3}, {"grid", 0}, {"chart_N", 512}}),
         cmd_profile},
        {"ia-scan", "CSV of a, T, V, Ia over a range start:stop:step", with({{"a", "0.05:0.45:0.05"}}), cmd_ia_scan},
        {"coil-mesh", "OBJ mesh of the coiled necklace", with({{"a", 0.3}, {"n", 8}, {"grid", "32x32"}}),
         cmd_coil_mesh},
        {"curvature-check", "mean curvature expansion of the coiled surface",
         with({{"a", 0.3}, {"n", "8,16,32,64"}, {"grid", "32x32"}}), cmd_curvature_check},
        {"nonlocal-check", "Coulomb potential against ln n",
         with({{"a", 0.3}, {"n", "16,32,64,128"}, {"grid", "24x32x48"}, {"theta", 0.0}, {"v", 0.0}}),
         cmd_nonlocal_check},
        {"reduce", "fixed point and gamma secant for one (a, n)",
         with({{"a", 0.3}, {"n", 32}, {"tol", 1e-7}, {"grid", 64}, {"kmax", 8}, {"trace", ""}}), cmd_reduce},
        {"mass-map", "neck size whose necklace carries mass m",
         with({{"m", 40.0}, {"n", 0}, {"tol", 1e-4}, {"a_lo", 0.05}, {"a_hi", 0.45}, {"leading", false}, {"grid", 64},
               {"kmax", 8}}),
         cmd_mass_map},
        {"appendix", "sech moment table and the small-a slope of Ia",
         with({{"horizon", 40.0}, {"a", "0.002:0.02:0.002"}}), cmd_appendix},
    };
}

// Converts a flag string to the type of the default value.
json coerce(const json& like, const std::string& raw, const std::string& key) {
    if (like.is_boolean()) {
        if (raw == "true" || raw == "1") return true;
        if (raw == "false" || raw == "0") return false;
        throw DomainError("expected true/false for --" + key);
    }
    if (like.is_number_integer()) return parse_int(raw, "--" + key);
    if (like.is_number()) return parse_double(raw, "--" + key);
    return raw;
}

json resolve(const Command& cmd, const std::string& config_path, const std::map<std::string, std::string>& flags) {
    json cfg = cmd.defaults;
    auto set = [&](const std::string& key, const json& value) {
        if (!cfg.contains(key)) throw DomainError("option '" + key + "' is not used by " + cmd.name);
        const json& like = cmd.defaults[key];
        if (like.is_number() && !value.is_number()) throw DomainError("option '" + key + "' must be a number");
        if (like.is_string() && !value.is_string()) throw DomainError("option '" + key + "' must be a string");
        if (like.is_boolean() && !value.is_boolean()) throw DomainError("option '" + key + "' must be a boolean");
        if (like.is_number_integer() && !value.is_number_integer()) throw DomainError("option '" + key + "' must be an integer");
        cfg[key] = value;
    };
    if (!config_path.empty()) {
        json file;
        try {
            file = json::parse(read_text(config_path));
        } catch (const json::parse_error& e) {
            throw DomainError("config " + config_path + ": " + e.what());
        }
        if (!file.is_object()) throw DomainError("config file must hold a JSON object");
        for (auto it = file.begin(); it != file.end(); ++it) set(it.key(), it.value());
    }
    for (const auto& [key, raw] : flags) {
        if (!cfg.contains(key)) throw DomainError("--" + key + " is not used by " + cmd.name);
        set(key, coerce(cmd.defaults[key], raw, key));
    }
    if (cfg["threads"].get<int>() < 1) throw DomainError("--threads must be at least 1");
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delaunay necklace toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    const std::vector<Command> cmds = commands();
    const std::vector<std::string> keys = {"a",  "n",     "m",    "tol",  "grid",  "threads", "out",
                                           "kmax", "trace", "theta", "v", "a_lo", "a_hi", "horizon", "chart_N"};
    std::vector<std::map<std::string, std::string>> values(cmds.size());
    std::vector<std::string> config_paths(cmds.size());
    std::vector<int> dry(cmds.size(), 0), leading(cmds.size(), 0);
    std::vector<CLI::App*> subs;
    std::vector<std::map<std::string, CLI::Option*>> opts(cmds.size());
    for (std::size_t c = 0; c < cmds.size(); ++c) {
        CLI::App* sub = app.add_subcommand(cmds[c].name, cmds[c].help);
        subs.push_back(sub);
        for (const auto& k : keys) {
            if (!cmds[c].defaults.contains(k) || k == "leading") continue;
            std::string flag = "--" + k;
            for (char& ch : flag)
                if (ch == '_') ch = '-';
            opts[c][k] = sub->add_option(flag, values[c][k], "default " + cmds[c].defaults[k].dump());
        }
        sub->add_option("--config", config_paths[c], "JSON file with option values (flags take precedence)");
        sub->add_flag("--dry-run", dry[c], "print the resolved configuration and exit");
        if (cmds[c].defaults.contains("leading"))
            sub->add_flag("--leading", leading[c], "use the leading-order coupling and unperturbed volume");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    for (std::size_t c = 0; c < cmds.size(); ++c) {
        if (!subs[c]->parsed()) continue;
        try {
            std::map<std::string, std::string> given;
            for (const auto& [k, opt] : opts[c])
                if (opt->count() > 0) given[k] = values[c][k];
            if (leading[c]) given["leading"] = "true";
            const json cfg = resolve(cmds[c], config_paths[c], given);
            if (dry[c]) {
                std::cout << json{{"meta", metadata_json(cmds[c].name, cfg)}, {"config", cfg}}.dump(2) << "\n";
                return 0;
            }
            cmds[c].run(cfg);
            return 0;
        } catch (const ValidationError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitValidation;
        } catch (const NumericalError& e) {
            std::cerr << "numerical failure: " << e.what() << "\n";
            return kExitNumerical;
        } catch (const json::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitValidation;
        }
    }
    return kExitValidation;
}
