// Command-line harness for the nbldpc library. Links only the public C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbldpc.h"

namespace {

constexpr const char* kVersion = "nbldpc 1.0.0";

[[noreturn]] void die(const std::string& where) {
    std::cerr << "error: " << where << ": " << nbldpc_last_error() << "\n";
    std::exit(1);
}

void check(nbldpc_status st, const std::string& where) {
    if (st != NBLDPC_OK) die(where);
}

std::vector<double> parse_eps_grid(const std::string& s) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
        hi < lo) {
        std::cerr << "error: --eps-grid expects lo:hi:step with step > 0\n";
        std::exit(1);
    }
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double e = lo + i * step;
        if (e > hi + 1e-12) break;
        grid.push_back(std::min(e, hi));
    }
    return grid;
}

// every run drops a <out>.echo file: version + parameters, enough to re-run
void write_echo(const std::string& out_path, const std::string& command,
                const std::vector<std::pair<std::string, std::string>>& params) {
    std::ofstream f(out_path + ".echo");
    f << "version " << kVersion << "\n";
    f << "command " << command << "\n";
    for (const auto& [k, v] : params) f << k << " " << v << "\n";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct FieldHandle {
    nbldpc_field* f = nullptr;
    FieldHandle(int p, unsigned poly) { check(nbldpc_field_create(p, poly, &f), "field"); }
    ~FieldHandle() { nbldpc_field_destroy(f); }
};

struct DdHandle {
    nbldpc_dd* dd = nullptr;
    explicit DdHandle(const std::string& path) { check(nbldpc_dd_load(path.c_str(), &dd), "dd"); }
    ~DdHandle() { nbldpc_dd_destroy(dd); }
};

std::vector<int> symbol_degrees(const nbldpc_dd* dd) {
    int n = 64;
    std::vector<int> degs(n);
    check(nbldpc_dd_symbol_degrees(dd, degs.data(), &n), "symbol_degrees");
    degs.resize(n);
    return degs;
}

int parse_selection(const std::string& s) {
    if (s == "dmin") return NBLDPC_SELECT_DMIN;
    if (s == "random") return NBLDPC_SELECT_RANDOM;
    std::cerr << "error: --selection must be dmin or random\n";
    std::exit(1);
}

// ---- subcommands ----

int cmd_build_code(const std::string& dd_path, int n, int p, unsigned poly, uint64_t seed,
                   const std::string& out) {
    FieldHandle field(p, poly);
    DdHandle dd(dd_path);
    nbldpc_code* code = nullptr;
    check(nbldpc_peg_build(dd.dd, n, field.f, seed, &code), "peg_build");
    check(nbldpc_code_save(code, out.c_str()), "code_save");
    int nn, mm, kk;
    check(nbldpc_code_dims(code, &nn, &mm, &kk), "code_dims");
    nbldpc_code_destroy(code);
    write_echo(out, "build-code",
               {{"dd", dd_path},
                {"n", std::to_string(n)},
                {"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"seed", std::to_string(seed)}});
    std::cout << "wrote " << out << "  N=" << nn << " M=" << mm << " K=" << kk << "\n";
    return 0;
}

int cmd_select_ext(int p, unsigned poly, int k, uint64_t seed, const std::string& eps_grid,
                   const std::string& out) {
    FieldHandle field(p, poly);
    int t = p + k;
    std::vector<int> cols(t);
    int dmin = 0;
    check(nbldpc_select_extension(field.f, k, cols.data(), &dmin), "select_extension");
    std::string col_str;
    for (int i = 0; i < t; ++i) col_str += (i ? "," : "") + std::to_string(cols[i]);

    std::vector<double> grid = parse_eps_grid(eps_grid);
    std::ofstream f(out);
    f << "field_p,k,columns,dmin,eps,expected_eligible\n";
    for (double eps : grid) {
        double val;
        check(nbldpc_expected_eligible(field.f, cols.data(), t, eps, &val),
              "expected_eligible");
        f << p << "," << k << ",\"" << col_str << "\"," << dmin << "," << fmt(eps) << ","
          << fmt(val) << "\n";
    }
    write_echo(out, "select-ext",
               {{"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"k", std::to_string(k)},
                {"eps-grid", eps_grid},
                {"seed", std::to_string(seed)}});
    std::cout << "columns " << col_str << "  dmin " << dmin << "\n";
    return 0;
}

int cmd_threshold(const std::string& dd_path, int p, unsigned poly,
                  const std::string& dist_path, const std::string& selection_str, int pop,
                  int max_iters, double bisect_tol, uint64_t seed, const std::string& out,
                  const std::string& trace) {
    FieldHandle field(p, poly);
    DdHandle dd(dd_path);
    nbldpc_dist* dist = nullptr;
    if (dist_path.empty())
        check(nbldpc_dist_none(field.f, &dist), "dist_none");
    else
        check(nbldpc_dist_load(field.f, dist_path.c_str(), &dist), "dist_load");

    nbldpc_de_config cfg;
    nbldpc_de_config_default(&cfg);
    cfg.population = pop;
    cfg.max_iters = max_iters;
    cfg.bisection_tol = bisect_tol;
    cfg.seed = seed;

    double th = 0, gap = 0;
    int sel = parse_selection(selection_str);
    nbldpc_status st = nbldpc_threshold(dd.dd, field.f, dist, sel, &cfg, &th, &gap,
                                        trace.empty() ? nullptr : trace.c_str());
    nbldpc_dist_destroy(dist);
    check(st, "threshold");

    double r;
    check(nbldpc_dd_design_rate(dd.dd, &r), "design_rate");
    std::ofstream f(out);
    f << "rate,threshold,delta,selection,population,bisection_tol,seed\n";
    f << fmt(r) << "," << fmt(th) << "," << fmt(gap) << "," << selection_str << "," << pop
      << "," << fmt(bisect_tol) << "," << seed << "\n";
    write_echo(out, "threshold",
               {{"dd", dd_path},
                {"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"dist", dist_path.empty() ? "(none)" : dist_path},
                {"selection", selection_str},
                {"pop", std::to_string(pop)},
                {"max-iters", std::to_string(max_iters)},
                {"bisect-tol", fmt(bisect_tol)},
                {"seed", std::to_string(seed)}});
    std::cout << "threshold " << fmt(th) << "  delta " << fmt(gap) << "\n";
    return 0;
}

int cmd_optimize(const std::string& dd_path, int p, unsigned poly, double re, int np,
                 int gens, double fw, double cr, int pop, uint64_t seed,
                 const std::string& out) {
    FieldHandle field(p, poly);
    DdHandle dd(dd_path);
    nbldpc_opt_config cfg;
    nbldpc_opt_config_default(&cfg);
    cfg.np = np;
    cfg.generations = gens;
    cfg.f_weight = fw;
    cfg.cr = cr;
    cfg.de.population = pop;
    cfg.seed = seed;
    cfg.de.seed = seed;

    int n = 64;
    std::vector<int> degs(n);
    std::vector<double> fd(n);
    double th = 0, delta = 0;
    check(nbldpc_optimize(dd.dd, field.f, re, &cfg, degs.data(), fd.data(), &n, &th, &delta),
          "optimize");

    std::ofstream f(out);
    f << "# optimized spreading parameters, target extended rate " << fmt(re) << "\n";
    for (int i = 0; i < n; ++i) f << degs[i] << " " << fmt(fd[i]) << "\n";
    f << "threshold " << fmt(th) << "\n";
    f << "delta " << fmt(delta) << "\n";
    std::ofstream c(out + ".csv");
    c << "r_e,threshold,delta,np,generations,population,seed\n";
    c << fmt(re) << "," << fmt(th) << "," << fmt(delta) << "," << np << "," << gens << ","
      << pop << "," << seed << "\n";
    write_echo(out, "optimize",
               {{"dd", dd_path},
                {"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"re", fmt(re)},
                {"np", std::to_string(np)},
                {"gens", std::to_string(gens)},
                {"f-weight", fmt(fw)},
                {"cr", fmt(cr)},
                {"pop", std::to_string(pop)},
                {"seed", std::to_string(seed)}});
    std::cout << "threshold " << fmt(th) << "  delta " << fmt(delta) << "\n";
    return 0;
}

int cmd_ber_sweep(const std::string& code_path, int p, unsigned poly,
                  const std::string& dist_path, const std::string& selection_str,
                  const std::string& eps_grid, int trials, int max_iters, uint64_t seed,
                  const std::string& out) {
    FieldHandle field(p, poly);
    nbldpc_code* code = nullptr;
    check(nbldpc_code_load(code_path.c_str(), &code), "code_load");
    nbldpc_dist* dist = nullptr;
    if (dist_path.empty())
        check(nbldpc_dist_none(field.f, &dist), "dist_none");
    else
        check(nbldpc_dist_load(field.f, dist_path.c_str(), &dist), "dist_load");

    std::vector<double> grid = parse_eps_grid(eps_grid);
    std::vector<double> ber(grid.size()), se(grid.size());
    nbldpc_status st =
        nbldpc_ber_sweep(code, dist, parse_selection(selection_str), grid.data(),
                         static_cast<int>(grid.size()), trials, max_iters, seed, ber.data(),
                         se.data());
    nbldpc_dist_destroy(dist);
    nbldpc_code_destroy(code);
    check(st, "ber_sweep");

    std::ofstream f(out);
    f << "eps,ber,std_err,trials\n";
    for (size_t i = 0; i < grid.size(); ++i)
        f << fmt(grid[i]) << "," << fmt(ber[i]) << "," << fmt(se[i]) << "," << trials << "\n";
    write_echo(out, "ber-sweep",
               {{"code", code_path},
                {"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"dist", dist_path.empty() ? "(none)" : dist_path},
                {"selection", selection_str},
                {"eps-grid", eps_grid},
                {"trials", std::to_string(trials)},
                {"max-iters", std::to_string(max_iters)},
                {"seed", std::to_string(seed)}});
    std::cout << "wrote " << out << " (" << grid.size() << " points)\n";
    return 0;
}

int cmd_table1(const std::string& dd_path, int p, unsigned poly, const std::string& rates_str,
               int np, int gens, int pop, uint64_t seed, const std::string& out) {
    FieldHandle field(p, poly);
    DdHandle dd(dd_path);
    double r;
    check(nbldpc_dd_design_rate(dd.dd, &r), "design_rate");
    std::vector<int> degs = symbol_degrees(dd.dd);
    int q1 = 0;  // max extension count = q - p - 1, derive from full-budget rate
    {
        int tmp;
        check(nbldpc_gf_add(field.f, 0, 0, &tmp), "field probe");
        q1 = (1 << p) - p - 1;
    }
    double re_full = r * p / (p + q1);

    std::vector<double> rates;
    {
        std::istringstream is(rates_str);
        std::string tok;
        while (std::getline(is, tok, ',')) rates.push_back(std::stod(tok));
        if (rates.empty()) {
            std::cerr << "error: --rates is empty\n";
            std::exit(1);
        }
    }

    nbldpc_de_config de;
    nbldpc_de_config_default(&de);
    de.population = pop;
    de.seed = seed;

    std::ofstream f(out);
    f << "r_e,f_mean,threshold,delta,threshold_rand,delta_rand\n";
    for (double re : rates) {
        std::vector<double> fd(degs.size(), 0.0);
        double th = 0, delta = 0;
        if (std::fabs(re - r) < 1e-12) {
            // no extension
        } else if (std::fabs(re - re_full) < 1e-9) {
            for (double& v : fd) v = q1;  // forced: every nontrivial bit extended
        } else {
            nbldpc_opt_config oc;
            nbldpc_opt_config_default(&oc);
            oc.np = np;
            oc.generations = gens;
            oc.de = de;
            oc.seed = seed;
            int n = static_cast<int>(degs.size());
            std::vector<int> odegs(n);
            check(nbldpc_optimize(dd.dd, field.f, re, &oc, odegs.data(), fd.data(), &n, &th,
                                  &delta),
                  "optimize");
        }
        nbldpc_dist* dist = nullptr;
        check(nbldpc_dist_spreading(field.f, degs.data(), fd.data(),
                                    static_cast<int>(degs.size()), &dist),
              "dist_spreading");
        double fmean;
        check(nbldpc_dist_average_extension(dist, dd.dd, &fmean), "average_extension");
        check(nbldpc_threshold(dd.dd, field.f, dist, NBLDPC_SELECT_DMIN, &de, &th, &delta,
                               nullptr),
              "threshold");
        double thr = th, dr = delta;
        if (fmean > 1e-12)
            check(nbldpc_threshold(dd.dd, field.f, dist, NBLDPC_SELECT_RANDOM, &de, &thr, &dr,
                                   nullptr),
                  "threshold(random)");
        nbldpc_dist_destroy(dist);
        f << fmt(re) << "," << fmt(fmean) << "," << fmt(th) << "," << fmt(delta) << ","
          << fmt(thr) << "," << fmt(dr) << "\n";
        f.flush();
        std::cout << "r_e " << fmt(re) << "  threshold " << fmt(th) << "  delta " << fmt(delta)
                  << "  delta_rand " << fmt(dr) << "\n";
    }
    write_echo(out, "table1",
               {{"dd", dd_path},
                {"field", std::to_string(p)},
                {"poly", std::to_string(poly)},
                {"rates", rates_str},
                {"np", std::to_string(np)},
                {"gens", std::to_string(gens)},
                {"pop", std::to_string(pop)},
                {"seed", std::to_string(seed)}});
    return 0;
}

// split one CSV line; quoted fields may contain commas
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int cmd_emit_plot_data(const std::string& in, const std::string& xcol, const std::string& ycol,
                       const std::string& series_col, const std::string& out_dir,
                       const std::string& prefix) {
    std::ifstream f(in);
    if (!f) {
        std::cerr << "error: cannot open " << in << "\n";
        return 1;
    }
    std::string header;
    if (!std::getline(f, header)) {
        std::cerr << "error: empty results file\n";
        return 1;
    }
    std::vector<std::string> cols = split_csv(header);
    auto col_index = [&](const std::string& name) {
        for (size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        std::cerr << "error: column '" << name << "' not in " << in << "\n";
        std::exit(1);
    };
    int xi = col_index(xcol), yi = col_index(ycol);
    int si = series_col.empty() ? -1 : col_index(series_col);

    std::map<std::string, std::vector<std::pair<std::string, std::string>>> series;
    std::string line;
    uint64_t hash = 1469598103934665603ULL;  // FNV-1a over the input bytes
    for (char ch : header) hash = (hash ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        for (char ch : line) hash = (hash ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
        std::vector<std::string> row = split_csv(line);
        if (static_cast<int>(row.size()) <= std::max(xi, std::max(yi, si))) {
            std::cerr << "error: malformed CSV row: " << line << "\n";
            return 1;
        }
        std::string key = si < 0 ? "all" : row[si];
        series[key].emplace_back(row[xi], row[yi]);
    }
    if (series.empty()) {
        std::cerr << "error: no data rows in " << in << "\n";
        return 1;
    }

    std::ofstream manifest(out_dir + "/" + prefix + "_manifest.txt");
    char hbuf[32];
    std::snprintf(hbuf, sizeof hbuf, "%016llx", static_cast<unsigned long long>(hash));
    for (const auto& [key, pts] : series) {
        std::string safe;
        for (char ch : key) safe += (std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
        std::string path = out_dir + "/" + prefix + "_" + safe + ".dat";
        std::ofstream s(path);
        s << "# " << xcol << " " << ycol << "  series " << key << "\n";
        for (const auto& [x, y] : pts) s << x << " " << y << "\n";
        manifest << path << " series=" << key << " points=" << pts.size() << " config=" << hbuf
                 << "\n";
    }
    std::cout << "wrote " << series.size() << " series to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary LDPC toolkit: extension selection, thresholds, optimization"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // shared option storage
    std::string dd_path, dist_path, code_path, out = "out.csv", trace, eps_grid = "0:0:1";
    std::string selection = "dmin", rates, in_path, xcol, ycol, series_col, out_dir = ".",
                prefix = "series";
    int p = 4, n = 0, k = 1, pop = 10000, max_iters = 200, np = 40, gens = 30, trials = 1000;
    unsigned poly = 0;
    double bisect_tol = 1e-3, re = 0.4, fw = 0.5, cr = 0.9;
    uint64_t seed = 1;

    auto* bc = app.add_subcommand("build-code", "PEG-construct a code from a degree file");
    bc->add_option("--dd", dd_path, "degree-polynomial file")->required();
    bc->add_option("--n", n, "number of symbol nodes")->required();
    bc->add_option("--field", p, "field extension degree p for GF(2^p)");
    bc->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    bc->add_option("--seed", seed, "RNG seed");
    bc->add_option("--out", out, "output code file")->required();

    auto* se = app.add_subcommand("select-ext", "pick an extension matrix and evaluate it");
    se->add_option("--field", p, "field extension degree p");
    se->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    se->add_option("--k", k, "number of extended bits")->required();
    se->add_option("--eps-grid", eps_grid, "lo:hi:step erasure grid for E(A)");
    se->add_option("--seed", seed, "RNG seed");
    se->add_option("--out", out, "output CSV")->required();

    auto* th = app.add_subcommand("threshold", "Monte-Carlo density-evolution threshold");
    th->add_option("--dd", dd_path, "degree-polynomial file")->required();
    th->add_option("--field", p, "field extension degree p");
    th->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    th->add_option("--dist", dist_path, "extending-distribution file (default: none)");
    th->add_option("--selection", selection, "dmin | random");
    th->add_option("--pop", pop, "DE sample population");
    th->add_option("--max-iters", max_iters, "decoder iteration cap");
    th->add_option("--bisect-tol", bisect_tol, "bisection tolerance");
    th->add_option("--seed", seed, "RNG seed");
    th->add_option("--trace", trace, "optional bisection trace CSV");
    th->add_option("--out", out, "output CSV")->required();

    auto* op = app.add_subcommand("optimize", "search spreading parameters for a target rate");
    op->add_option("--dd", dd_path, "degree-polynomial file")->required();
    op->add_option("--field", p, "field extension degree p");
    op->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    op->add_option("--re", re, "target extended rate")->required();
    op->add_option("--np", np, "DE population size");
    op->add_option("--gens", gens, "DE generations");
    op->add_option("--f-weight", fw, "DE differential weight");
    op->add_option("--cr", cr, "DE crossover rate");
    op->add_option("--pop", pop, "density-evolution sample population");
    op->add_option("--seed", seed, "RNG seed");
    op->add_option("--out", out, "output result file")->required();

    auto* bs = app.add_subcommand("ber-sweep", "finite-length BER simulation");
    bs->add_option("--code", code_path, "code file")->required();
    bs->add_option("--field", p, "field extension degree p");
    bs->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    bs->add_option("--dist", dist_path, "extending-distribution file (default: none)");
    bs->add_option("--selection", selection, "dmin | random");
    bs->add_option("--eps-grid", eps_grid, "lo:hi:step erasure grid")->required();
    bs->add_option("--trials", trials, "decode trials per grid point");
    bs->add_option("--max-iters", max_iters, "decoder iteration cap");
    bs->add_option("--seed", seed, "RNG seed");
    bs->add_option("--out", out, "output CSV")->required();

    auto* t1 = app.add_subcommand("table1", "threshold/gap table across extended rates");
    t1->add_option("--dd", dd_path, "degree-polynomial file")->required();
    t1->add_option("--field", p, "field extension degree p");
    t1->add_option("--poly", poly, "irreducible polynomial (0 = default)");
    t1->add_option("--rates", rates, "comma-separated extended rates")->required();
    t1->add_option("--np", np, "optimizer population");
    t1->add_option("--gens", gens, "optimizer generations");
    t1->add_option("--pop", pop, "density-evolution sample population");
    t1->add_option("--seed", seed, "RNG seed");
    t1->add_option("--out", out, "output CSV")->required();

    auto* pl = app.add_subcommand("emit-plot-data", "split a results CSV into plot series");
    pl->add_option("--in", in_path, "results CSV")->required();
    pl->add_option("--x", xcol, "x column name")->required();
    pl->add_option("--y", ycol, "y column name")->required();
    pl->add_option("--series", series_col, "series (grouping) column name");
    pl->add_option("--out-dir", out_dir, "output directory");
    pl->add_option("--prefix", prefix, "output file prefix");

    CLI11_PARSE(app, argc, argv);

    if (bc->parsed()) return cmd_build_code(dd_path, n, p, poly, seed, out);
    if (se->parsed()) return cmd_select_ext(p, poly, k, seed, eps_grid, out);
    if (th->parsed())
        return cmd_threshold(dd_path, p, poly, dist_path, selection, pop, max_iters,
                             bisect_tol, seed, out, trace);
    if (op->parsed())
        return cmd_optimize(dd_path, p, poly, re, np, gens, fw, cr, pop, seed, out);
    if (bs->parsed())
        return cmd_ber_sweep(code_path, p, poly, dist_path, selection, eps_grid, trials,
                             max_iters, seed, out);
    if (t1->parsed()) return cmd_table1(dd_path, p, poly, rates, np, gens, pop, seed, out);
    if (pl->parsed())
        return cmd_emit_plot_data(in_path, xcol, ycol, series_col, out_dir, prefix);
    return 0;
}
