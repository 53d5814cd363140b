#include "chns/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "chns/errors.hpp"
#include "chns/kernels.hpp"
#include "chns/verification.hpp"

namespace chns {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError(key, "not a number: '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long n = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ValidationError(key, "not an integer: '" + v + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_any = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "empty key");
        saw_any = true;

        if (key == "scenario") cfg.scenario = val;
        else if (key == "order") cfg.order = int(to_long(key, val));
        else if (key == "nx") cfg.nx = int(to_long(key, val));
        else if (key == "ny") cfg.ny = int(to_long(key, val));
        else if (key == "lx") cfg.lx = to_double(key, val);
        else if (key == "ly") cfg.ly = to_double(key, val);
        else if (key == "x0") cfg.x0 = to_double(key, val);
        else if (key == "y0") cfg.y0 = to_double(key, val);
        else if (key == "dt") cfg.dt = to_double(key, val);
        else if (key == "tend") cfg.tend = to_double(key, val);
        else if (key == "out") cfg.out = val;
        else if (key == "snap_every") cfg.snap_every = to_long(key, val);
        else if (key == "diag_every") cfg.diag_every = to_long(key, val);
        else if (key == "seed") cfg.seed = std::uint64_t(to_long(key, val));
        else if (key == "kappa0") cfg.kappa0 = to_double(key, val);
        else if (key == "lambda") cfg.lambda = to_double(key, val);
        else if (key == "mobility") cfg.mobility = to_double(key, val);
        else if (key == "eps") cfg.eps = to_double(key, val);
        else if (key == "gamma") cfg.gamma = to_double(key, val);
        else if (key == "nu") cfg.nu = to_double(key, val);
        else if (key == "chi") cfg.chi = to_double(key, val);
        else if (key == "gx") cfg.gx = to_double(key, val);
        else if (key == "gy") cfg.gy = to_double(key, val);
        else if (key == "radius") cfg.radius = to_double(key, val);
        else if (key == "max_steps") cfg.max_steps = to_long(key, val);
        else if (key == "debug_checks") cfg.debug_checks = to_long(key, val) != 0;
        else throw ValidationError(key, "unknown key");
    }
    if (!saw_any) throw ValidationError("scenario", "empty config: scenario or explicit parameters required");

    if (cfg.dt && *cfg.dt <= 0) throw ValidationError("dt", "must be positive");
    if (cfg.tend && *cfg.tend <= 0) throw ValidationError("tend", "must be positive");
    if (cfg.snap_every < 0) throw ValidationError("snap_every", "must be >= 0");
    if (cfg.diag_every < 1) throw ValidationError("diag_every", "must be >= 1");
    if (cfg.order && (*cfg.order < 1 || *cfg.order > 5))
        throw ValidationError("order", "must be in 1..5");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Scenario RunConfig::resolve() const {
    Scenario s;
    if (scenario) {
        s = preset(*scenario);
    } else {
        // Explicit-parameter mode: small seeded noise as initial condition.
        if (!nx || !dt || !tend)
            throw ValidationError("scenario",
                                  "either scenario= or explicit nx/dt/tend required");
        s.name = "custom";
        s.grid = Grid2(*nx, ny.value_or(*nx), lx.value_or(1.0), ly.value_or(1.0),
                       x0.value_or(0.0), y0.value_or(0.0));
        s.dt = *dt;
        s.t_end = *tend;
    }
    if (nx || ny || lx || ly || x0 || y0)
        s.grid = Grid2(nx.value_or(s.grid.nx), ny.value_or(s.grid.ny),
                       lx.value_or(s.grid.Lx), ly.value_or(s.grid.Ly),
                       x0.value_or(s.grid.x0), y0.value_or(s.grid.y0));
    if (order) s.order = *order;
    if (dt) s.dt = *dt;
    if (tend) s.t_end = *tend;
    if (kappa0) s.params.kappa0 = *kappa0;
    if (lambda) s.params.lambda = *lambda;
    if (mobility) s.params.mobility = *mobility;
    if (eps) s.params.eps = *eps;
    if (gamma) s.params.gamma = *gamma;
    if (nu) s.params.nu = *nu;
    if (chi) s.params.chi = *chi;
    if (gx) s.params.gravity[0] = *gx;
    if (gy) s.params.gravity[1] = *gy;
    if (radius) s.radius = *radius;
    s.seed = seed;
    if (!(s.dt > 0)) throw ValidationError("dt", "must be positive");
    if (!(s.t_end > 0)) throw ValidationError("tend", "must be positive");
    try {
        s.params.validate();
    } catch (const Error& e) {
        throw ValidationError("params", e.what());
    }
    return s;
}

void write_snapshot(const std::string& path, const ScalarField& f, double t) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("cannot open " + path);
    std::fprintf(fp, "%d %d %.17g %.17g %.17g\n", f.grid.nx, f.grid.ny, f.grid.Lx,
                 f.grid.Ly, t);
    std::fwrite(f.data(), sizeof(double), f.size(), fp);
    if (std::ferror(fp)) {
        std::fclose(fp);
        throw Error("write failed for " + path);
    }
    std::fclose(fp);
}

void write_snapshot(const std::string& path, const VectorField2& v, double t) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("cannot open " + path);
    std::fprintf(fp, "%d %d %.17g %.17g %.17g\n", v.grid().nx, v.grid().ny,
                 v.grid().Lx, v.grid().Ly, t);
    std::fwrite(v.x.data(), sizeof(double), v.x.size(), fp);
    std::fwrite(v.y.data(), sizeof(double), v.y.size(), fp);
    if (std::ferror(fp)) {
        std::fclose(fp);
        throw Error("write failed for " + path);
    }
    std::fclose(fp);
}

ScalarField read_snapshot(const std::string& path, double* t_out) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw Error("cannot open " + path);
    int nx, ny;
    double Lx, Ly, t;
    if (std::fscanf(fp, "%d %d %lg %lg %lg", &nx, &ny, &Lx, &Ly, &t) != 5 ||
        std::fgetc(fp) != '\n') {
        std::fclose(fp);
        throw Error("bad snapshot header in " + path);
    }
    ScalarField f(Grid2(nx, ny, Lx, Ly));
    if (std::fread(f.data(), sizeof(double), f.size(), fp) != f.size()) {
        std::fclose(fp);
        throw Error("truncated snapshot " + path);
    }
    std::fclose(fp);
    if (t_out) *t_out = t;
    return f;
}

namespace {

void write_diag_row(std::FILE* fp, long step, double t, double R, double Rt,
                    double xi, double eta, double E, double gap, double diss,
                    double mass, double maxdiv) {
    std::fprintf(fp,
                 "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 step, t, R, Rt, xi, eta, E, gap, diss, mass, maxdiv);
}

void write_manifest(const std::string& path, const RunConfig& cfg, const Scenario& s) {
    nlohmann::json j;
    j["version"] = "0.1.0";
    j["kernel_backend"] = kern::backend_name();
    j["scenario"] = s.name;
    j["order"] = s.order;
    j["grid"] = {{"nx", s.grid.nx}, {"ny", s.grid.ny}, {"Lx", s.grid.Lx},
                 {"Ly", s.grid.Ly}, {"x0", s.grid.x0}, {"y0", s.grid.y0}};
    j["dt"] = s.dt;
    j["t_end"] = s.t_end;
    j["seed"] = s.seed;
    j["params"] = {{"lambda", s.params.lambda}, {"mobility", s.params.mobility},
                   {"eps", s.params.eps},       {"gamma", s.params.gamma},
                   {"nu", s.params.nu},         {"kappa0", s.params.kappa0},
                   {"chi", s.params.chi},
                   {"gravity", {s.params.gravity[0], s.params.gravity[1]}}};
    j["snap_every"] = cfg.snap_every;
    j["diag_every"] = cfg.diag_every;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

ScalarField noise_initial(const Grid2& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.samples) v = 0.01 * unif(rng);
    return f;
}

}  // namespace

int run(const RunConfig& cfg) {
    Scenario sc;
    try {
        sc = cfg.resolve();
    } catch (const Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }
    try {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out);

        ScalarField phi0 =
            sc.name == "custom" ? noise_initial(sc.grid, sc.seed) : sc.initial_phi();
        SolverState state(sc.grid, sc.params, sc.order, phi0, sc.initial_u());
        write_manifest(cfg.out + "/run_manifest.json", cfg, sc);

        std::FILE* diag = std::fopen((cfg.out + "/diagnostics.csv").c_str(), "w");
        if (!diag) throw Error("cannot open diagnostics.csv");
        std::fprintf(diag,
                     "step,t,R,R_tilde,xi,eta,E_original,gap,dissipation,mass,"
                     "max_div_u\n");
        {
            double E0 = energy(state.phi(), state.u(), sc.params);
            double d0 = dissipation_rate(state.mu(), state.u(), sc.params);
            ScalarField div0 = divergence(state.u());
            write_diag_row(diag, 0, 0.0, state.R(), state.R(), 1.0, 1.0, E0,
                           std::fabs(state.R() - (E0 + sc.params.kappa0)), d0,
                           mean(state.phi()), kern::ops().max_abs(div0.data(),
                                                                  div0.size()));
        }
        auto snap = [&](long step) {
            char name[64];
            std::snprintf(name, sizeof name, "/phi_%06ld.dat", step);
            write_snapshot(cfg.out + name, state.phi(), state.time());
            std::snprintf(name, sizeof name, "/u_%06ld.dat", step);
            write_snapshot(cfg.out + name, state.u(), state.time());
            std::snprintf(name, sizeof name, "/p_%06ld.dat", step);
            write_snapshot(cfg.out + name, state.p(), state.time());
        };
        if (cfg.snap_every > 0) snap(0);

        long nsteps = std::lround(sc.t_end / sc.dt);
        if (cfg.max_steps > 0) nsteps = std::min(nsteps, cfg.max_steps);
        int rc = kExitOk;
        for (long s = 1; s <= nsteps; ++s) {
            double R_before = state.R();
            StepDiagnostics d;
            try {
                d = state.step(sc.dt);
            } catch (const StateError& e) {
                std::fprintf(stderr, "blow-up: %s\n", e.what());
                rc = kExitBlowUp;
                break;
            }
            if (cfg.debug_checks) {
                // SAV branch identity: when R^n already sits at or below the
                // shifted energy, the min-update must return E + kappa0.
                double shifted = d.original_energy + sc.params.kappa0;
                if (R_before >= shifted && d.R != shifted)
                    throw Error("SAV branch identity violated");
            }
            if (s % cfg.diag_every == 0 || s == nsteps)
                write_diag_row(diag, d.step, d.t, d.R, d.R_tilde, d.xi, d.eta,
                               d.original_energy, d.modified_gap, d.dissipation,
                               d.mass, d.max_div_u);
            if (cfg.snap_every > 0 && s % cfg.snap_every == 0) snap(s);
        }
        std::fclose(diag);
        return rc;
    } catch (const StateError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}

int converge(int k, const std::vector<double>& dts, const std::string& out_path) {
    try {
        auto rows = convergence_study(k, dts, ConvergenceConfig::reference());
        write_convergence_csv(out_path, k, rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == 0)
                std::printf("dt=%-10g  err_phi_l2=%.3e  err_u_l2=%.3e  (reference)\n",
                            rows[i].dt, rows[i].err.phi_l2, rows[i].err.u_l2);
            else
                std::printf(
                    "dt=%-10g  err_phi_l2=%.3e  err_u_l2=%.3e  order_phi=%.2f  "
                    "order_u=%.2f%s\n",
                    rows[i].dt, rows[i].err.phi_l2, rows[i].err.u_l2,
                    rows[i].order.phi_l2, rows[i].order.u_l2,
                    rows.size() == 2 ? "  (single estimate)" : "");
        }
        return kExitOk;
    } catch (const StateError& e) {
        std::fprintf(stderr, "blow-up: %s\n", e.what());
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}

int energy_curves(const std::string& diagnostics_csv, const std::string& out_path) {
    try {
        std::ifstream in(diagnostics_csv);
        if (!in) throw Error("cannot read " + diagnostics_csv);
        std::FILE* out = std::fopen(out_path.c_str(), "w");
        if (!out) throw Error("cannot open " + out_path);
        std::string line;
        std::getline(in, line);  // header
        std::fprintf(out, "step,t,E_original,R\n");
        while (std::getline(in, line)) {
            long step;
            double t, R, Rt, xi, eta, E;
            if (std::sscanf(line.c_str(), "%ld,%lg,%lg,%lg,%lg,%lg,%lg", &step, &t,
                            &R, &Rt, &xi, &eta, &E) == 7)
                std::fprintf(out, "%ld,%.17g,%.17g,%.17g\n", step, t, E, R);
        }
        std::fclose(out);
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}

}  // namespace chns
