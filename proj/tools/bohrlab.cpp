// bohrlab: set algebra, Bohr tools, intersectivity tables, exponential sums,
// mean diagnostics, generators, and verification scenarios from one binary.
#include "bohrlab/arith.hpp"
#include "bohrlab/bohr.hpp"
#include "bohrlab/densities.hpp"
#include "bohrlab/errors.hpp"
#include "bohrlab/expsum.hpp"
#include "bohrlab/generators.hpp"
#include "bohrlab/harness.hpp"
#include "bohrlab/io.hpp"
#include "bohrlab/means.hpp"
#include "bohrlab/measures.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace bohrlab;

namespace {

window parse_window(const std::string& text)
{
    auto colon = text.find(':', 1); // skip a leading minus sign
    if (colon == std::string::npos)
        throw config_error("window must look like lo:hi, got '" + text + "'");
    return window(std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1)));
}

window_set load_set(const std::string& path, bool binary)
{
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f) throw config_error("cannot open set file: " + path);
    if (binary) return window_set::read_binary(f);
    return window_set::read_text(f);
}

void store_set(const window_set& s, const std::string& path, bool binary,
               const std::string& provenance = "")
{
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw config_error("cannot open output file: " + path);
    if (binary) {
        s.write_binary(f);
    } else {
        if (!provenance.empty()) f << "# " << provenance << '\n';
        s.write_text(f);
    }
}

std::vector<frequency> parse_freqs(const std::vector<std::string>& texts)
{
    std::vector<frequency> out;
    for (const auto& t : texts) out.push_back(frequency::parse(t));
    return out;
}

void emit_report(const scenario_report& rep, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << rep.to_json() << '\n';
    } else {
        std::ofstream f(out_path);
        if (!f) throw config_error("cannot open report file: " + out_path);
        f << rep.to_json() << '\n';
        std::cout << "report: " << out_path << (rep.all_pass() ? " [all pass]" : " [has failures]")
                  << '\n';
    }
}

struct verify_args {
    std::string scenario;
    std::string config_path;
    std::uint64_t seed = 42;
    std::string out_path;
    std::string csv_path;
    std::string plot_path;
    bool explain = false;
};

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string json_cell(const nlohmann::ordered_json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt_g17(v.get<double>());
    return v.dump();
}

void write_rows_csv(const scenario_report& rep, const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw config_error("cannot open csv file: " + path);
    // header: union of row keys in first-appearance order
    std::vector<std::string> cols;
    for (const auto& row : rep.rows)
        for (auto it = row.begin(); it != row.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                cols.push_back(it.key());
    std::vector<std::string> header;
    for (const auto& c : cols) header.push_back(csv_escape(c));
    write_csv_row(f, header);
    for (const auto& row : rep.rows) {
        std::vector<std::string> cells;
        for (const auto& c : cols)
            cells.push_back(row.contains(c) ? csv_escape(json_cell(row.at(c))) : "");
        write_csv_row(f, cells);
    }
}

void reject_unknown(const toml_table& t)
{
    auto unread = t.unread_keys();
    if (!unread.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unread) msg += " " + k;
        throw config_error(msg);
    }
}

int run_verify(const verify_args& args)
{
    toml_table cfg;
    if (!args.config_path.empty()) cfg = toml_table::parse_file(args.config_path);
    // a config may carry its own scenario line (that is what --explain emits)
    std::string cfg_scenario = cfg.get_string("scenario", args.scenario);
    if (cfg_scenario != args.scenario)
        throw config_error("config is for scenario '" + cfg_scenario + "'");
    scenario_report rep;
    toml_table resolved;
    resolved.set("scenario", {args.scenario});

    if (args.scenario == "bogolyubov" || args.scenario == "bogolyubov2") {
        std::int64_t n = cfg.get_int("N", 16384);
        double delta = cfg.get_double("delta", 0.1);
        std::int64_t trials = cfg.get_int("trials", 20);
        resolved.set("N", {n});
        resolved.set("delta", {delta});
        resolved.set("trials", {trials});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = bogolyubov_scan(n, delta, trials, args.seed, args.scenario == "bogolyubov2");
    } else if (args.scenario == "folner") {
        auto moduli = cfg.has("moduli") ? cfg.at("moduli").as_int_array()
                                        : std::vector<std::int64_t>{1024, 4096, 16384};
        double delta = cfg.get_double("delta", 0.2);
        std::int64_t trials = cfg.get_int("trials", 20);
        double eta = cfg.get_double("eta", 1.0);
        resolved.set("moduli", {moduli});
        resolved.set("delta", {delta});
        resolved.set("trials", {trials});
        resolved.set("eta", {eta});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = folner_residual(moduli, delta, trials, args.seed, eta);
    } else if (args.scenario == "thmB") {
        thmb_config c;
        c.a_kind = cfg.get_string("a_kind", c.a_kind);
        c.a_density = cfg.get_double("a_density", c.a_density);
        c.a_hi = cfg.get_int("a_hi", c.a_hi);
        c.s_kind = cfg.get_string("s_kind", c.s_kind);
        c.poly = cfg.get_string("poly", c.poly);
        if (cfg.has("q_polys")) c.q_polys = cfg.at("q_polys").as_string_array();
        c.s_max_n = cfg.get_int("s_max_n", c.s_max_n);
        c.probe_lo = cfg.get_int("probe_lo", c.probe_lo);
        c.probe_hi = cfg.get_int("probe_hi", c.probe_hi);
        c.k_max = cfg.get_int("k_max", c.k_max);
        c.trials = cfg.get_int("trials", c.trials);
        c.b_density = cfg.get_double("b_density", c.b_density);
        c.b_hi = cfg.get_int("b_hi", c.b_hi);
        resolved.set("a_kind", {c.a_kind});
        resolved.set("a_density", {c.a_density});
        resolved.set("a_hi", {c.a_hi});
        resolved.set("s_kind", {c.s_kind});
        resolved.set("poly", {c.poly});
        resolved.set("q_polys", {c.q_polys});
        resolved.set("s_max_n", {c.s_max_n});
        resolved.set("probe_lo", {c.probe_lo});
        resolved.set("probe_hi", {c.probe_hi});
        resolved.set("k_max", {c.k_max});
        resolved.set("trials", {c.trials});
        resolved.set("b_density", {c.b_density});
        resolved.set("b_hi", {c.b_hi});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = thmb_subgroup_scan(c, args.seed);
    } else if (args.scenario == "hardy-cover") {
        hardy_cover_config c;
        c.c = cfg.get_string("c", c.c);
        c.a_density = cfg.get_double("a_density", c.a_density);
        c.a_hi = cfg.get_int("a_hi", c.a_hi);
        c.m = cfg.get_int("M", c.m);
        c.probe_lo = cfg.get_int("probe_lo", c.probe_lo);
        c.probe_hi = cfg.get_int("probe_hi", c.probe_hi);
        c.trials = cfg.get_int("trials", c.trials);
        resolved.set("c", {c.c});
        resolved.set("a_density", {c.a_density});
        resolved.set("a_hi", {c.a_hi});
        resolved.set("M", {c.m});
        resolved.set("probe_lo", {c.probe_lo});
        resolved.set("probe_hi", {c.probe_hi});
        resolved.set("trials", {c.trials});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = hardy_cover_scan(c, args.seed);
    } else if (args.scenario == "abb") {
        std::string s_kind = cfg.get_string("s_kind", "squares");
        std::int64_t s_hi = cfg.get_int("s_hi", 1000000);
        std::string s_file = cfg.get_string("s_file", "");
        std::int64_t scale = cfg.get_int("scale", 10000);
        auto freq_texts = cfg.has("freqs") ? cfg.at("freqs").as_string_array()
                                           : std::vector<std::string>{"1/2", "1/3", "1/4"};
        double eta = cfg.get_double("eta", 0.1);
        resolved.set("s_kind", {s_kind});
        resolved.set("s_hi", {s_hi});
        resolved.set("s_file", {s_file});
        resolved.set("scale", {scale});
        resolved.set("freqs", {freq_texts});
        resolved.set("eta", {eta});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        window_set s{window(0, 0)};
        if (s_kind == "squares") {
            window_set sq(window(1, s_hi));
            for (std::int64_t n = 1; n * n <= s_hi; ++n) sq.insert(n * n);
            s = sq;
        } else if (s_kind == "parity") {
            s = parity_alternating_set({{0, 99}, {1000, 2999}, {20000, 59999}}, 2.0);
        } else if (s_kind == "file") {
            s = load_set(s_file, false);
        } else {
            throw config_error("abb: unknown s_kind " + s_kind);
        }
        std::vector<bohr_spec> samples;
        for (const auto& t : freq_texts)
            samples.push_back(bohr_spec{{frequency::parse(t)}, eta});
        rep = abb_probe(s, samples, scale);
    } else if (args.scenario == "homomorphism") {
        homomorphism_config c;
        c.c_kind = cfg.get_string("c_kind", c.c_kind);
        c.c_modulus = cfg.get_int("c_modulus", c.c_modulus);
        c.alpha = cfg.get_string("alpha", c.alpha);
        c.u_hi = cfg.get_double("u_hi", c.u_hi);
        if (cfg.has("generators")) c.generators = cfg.at("generators").as_int_array();
        c.c_hi = cfg.get_int("c_hi", c.c_hi);
        c.s1 = cfg.get_int("s1", c.s1);
        c.s2 = cfg.get_int("s2", c.s2);
        c.probe_lo = cfg.get_int("probe_lo", c.probe_lo);
        c.probe_hi = cfg.get_int("probe_hi", c.probe_hi);
        c.k_max = cfg.get_int("k_max", c.k_max);
        resolved.set("c_kind", {c.c_kind});
        resolved.set("c_modulus", {c.c_modulus});
        resolved.set("alpha", {c.alpha});
        resolved.set("u_hi", {c.u_hi});
        resolved.set("generators", {c.generators});
        resolved.set("c_hi", {c.c_hi});
        resolved.set("s1", {c.s1});
        resolved.set("s2", {c.s2});
        resolved.set("probe_lo", {c.probe_lo});
        resolved.set("probe_hi", {c.probe_hi});
        resolved.set("k_max", {c.k_max});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = homomorphism_sumset_scan(c);
    } else if (args.scenario == "thmI") {
        thmi_config c;
        c.alpha = cfg.get_string("alpha", c.alpha);
        c.x1 = cfg.get_string("x1", c.x1);
        c.y1 = cfg.get_string("y1", c.y1);
        c.v_a = cfg.get_int("v_a", c.v_a);
        c.v_b = cfg.get_int("v_b", c.v_b);
        c.v_den = cfg.get_int("v_den", c.v_den);
        c.v_scale = cfg.get_int("v_scale", c.v_scale);
        c.v_scale_den = cfg.get_int("v_scale_den", c.v_scale_den);
        c.v_depth = static_cast<int>(cfg.get_int("v_depth", c.v_depth));
        c.n = cfg.get_int("N", c.n);
        c.q_max = cfg.get_int("q_max", c.q_max);
        c.g_max = cfg.get_int("g_max", c.g_max);
        c.sup_scan_n = cfg.get_int("sup_scan_n", c.sup_scan_n);
        c.eps = cfg.get_double("eps", c.eps);
        c.bohr_samples = cfg.get_int("bohr_samples", c.bohr_samples);
        resolved.set("alpha", {c.alpha});
        resolved.set("x1", {c.x1});
        resolved.set("y1", {c.y1});
        resolved.set("v_a", {c.v_a});
        resolved.set("v_b", {c.v_b});
        resolved.set("v_den", {c.v_den});
        resolved.set("v_scale", {c.v_scale});
        resolved.set("v_scale_den", {c.v_scale_den});
        resolved.set("v_depth", {static_cast<std::int64_t>(c.v_depth)});
        resolved.set("N", {c.n});
        resolved.set("q_max", {c.q_max});
        resolved.set("g_max", {c.g_max});
        resolved.set("sup_scan_n", {c.sup_scan_n});
        resolved.set("eps", {c.eps});
        resolved.set("bohr_samples", {c.bohr_samples});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = thmi_suite(c, args.seed);
    } else if (args.scenario == "prime-tower") {
        tower_config c;
        if (cfg.has("primes")) c.primes = cfg.at("primes").as_int_array();
        if (cfg.has("lengths")) c.lengths = cfg.at("lengths").as_int_array();
        c.first_start = cfg.get_int("first_start", c.first_start);
        c.chain_len = cfg.get_int("chain_len", c.chain_len);
        c.scale = cfg.get_int("scale", c.scale);
        resolved.set("primes", {c.primes});
        resolved.set("lengths", {c.lengths});
        resolved.set("first_start", {c.first_start});
        resolved.set("chain_len", {c.chain_len});
        resolved.set("scale", {c.scale});
        reject_unknown(cfg);
        if (args.explain) { std::cout << resolved.emit(); return 0; }
        rep = prime_tower_scan(c, args.seed);
    } else {
        throw config_error("unknown scenario: " + args.scenario);
    }

    if (!args.plot_path.empty()) {
        std::vector<svg_series> series;
        svg_series sr;
        sr.name = args.scenario;
        double x = 0;
        for (const auto& row : rep.rows) {
            for (const auto& key : {"radius", "median_residual", "upper_proxy", "fraction"}) {
                if (row.contains(key)) {
                    sr.points.emplace_back(x, row[key].get<double>());
                    break;
                }
            }
            x += 1;
        }
        if (!sr.points.empty()) series.push_back(sr);
        std::ofstream f(args.plot_path);
        if (!f) throw config_error("cannot open plot file: " + args.plot_path);
        write_svg_plot(f, rep.scenario, series);
    }
    if (!args.csv_path.empty()) write_rows_csv(rep, args.csv_path);
    emit_report(rep, args.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"desk-scale experiments on Bohr sets, sumsets and recurrence"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "cap worker threads (default: all cores)");

    auto* set_cmd = app.add_subcommand("set", "finite set algebra on window sets");
    std::string set_op, set_in, set_in2, set_out;
    std::int64_t set_scalar = 1;
    bool set_binary = false;
    set_cmd->add_option("op", set_op, "sum | diff | dilate")->required();
    set_cmd->add_option("--in", set_in, "input set (newline-delimited integers)")->required();
    set_cmd->add_option("--in2", set_in2, "second input for sum");
    set_cmd->add_option("--scalar", set_scalar, "dilation factor");
    set_cmd->add_option("--out", set_out, "output file (default: stdout)");
    set_cmd->add_flag("--binary", set_binary, "binary set format");

    auto* bohr_cmd = app.add_subcommand("bohr", "Bohr set tools");
    std::string bohr_op, bohr_window = "-100:100", bohr_in;
    std::vector<std::string> bohr_freqs;
    double bohr_eta = 0.1;
    std::int64_t bohr_n = 0;
    bohr_cmd->add_option("op", bohr_op, "enumerate | member | radius")->required();
    bohr_cmd->add_option("--freq", bohr_freqs, "frequency: p/q, decimal, sqrt2|sqrt3|sqrt5|golden");
    bohr_cmd->add_option("--eta", bohr_eta, "radius");
    bohr_cmd->add_option("--window", bohr_window, "lo:hi");
    bohr_cmd->add_option("--n", bohr_n, "point to test (member)");
    bohr_cmd->add_option("--in", bohr_in, "set file (radius)");

    auto* inter_cmd = app.add_subcommand("intersective", "intersectivity witness tables");
    std::vector<std::string> inter_polys;
    std::int64_t inter_upto = 100;
    bool inter_second = false;
    std::string inter_csv;
    inter_cmd
        ->add_option("--polys", inter_polys, "polynomial(s), e.g. \"(n^2-13)*(n^2-17)*(n^2-221)\"")
        ->required();
    inter_cmd->add_option("--upto", inter_upto, "verify for m = 1..M");
    inter_cmd->add_flag("--second-kind", inter_second, "require gcd(r_m, m) = 1");
    inter_cmd->add_option("--csv", inter_csv, "write the witness table as CSV");

    auto* weyl_cmd = app.add_subcommand("weyl", "exponential sums with decade checkpoints");
    std::string weyl_poly = "n^2", weyl_alpha = "sqrt2", weyl_kind = "poly", weyl_c = "3/2",
                weyl_out;
    std::int64_t weyl_n = 1000000;
    weyl_cmd->add_option("--poly", weyl_poly, "integer polynomial P");
    weyl_cmd->add_option("--alpha", weyl_alpha, "frequency");
    weyl_cmd->add_option("--N", weyl_n, "upper limit");
    weyl_cmd->add_option("--kind", weyl_kind, "poly | prime | hardy");
    weyl_cmd->add_option("--c", weyl_c, "Hardy exponent (kind = hardy)");
    weyl_cmd->add_option("--out", weyl_out, "CSV output (default: stdout)");

    auto* mean_cmd = app.add_subcommand("mean", "weighted-mean diagnostics");
    std::string mean_op = "spectrum", mean_support = "squares", mean_csv_in, mean_out;
    std::int64_t mean_n = 10000, mean_qmax = 64;
    double mean_threshold = 0.05;
    std::vector<std::string> mean_grid{"sqrt2", "sqrt3", "sqrt5", "golden"};
    mean_cmd->add_option("op", mean_op, "spectrum | accumulation | annihilation")->required();
    mean_cmd->add_option("--support", mean_support, "squares | uniform | primes | csv");
    mean_cmd->add_option("--csv-in", mean_csv_in, "mean as CSV (support = csv)");
    mean_cmd->add_option("--N", mean_n, "support size parameter");
    mean_cmd->add_option("--qmax", mean_qmax, "rational denominator bound");
    mean_cmd->add_option("--threshold", mean_threshold, "report |mhat| above this");
    mean_cmd->add_option("--real-grid", mean_grid, "real frequencies to scan");
    mean_cmd->add_option("--out", mean_out, "CSV output (default: stdout)");

    auto* meas_cmd = app.add_subcommand("measure", "torus-measure Fourier oracle");
    std::string meas_spec, meas_out;
    std::int64_t meas_from = 0, meas_to = 64;
    meas_cmd->add_option("--spec", meas_spec, "measure JSON file")->required();
    meas_cmd->add_option("--from", meas_from, "first n");
    meas_cmd->add_option("--to", meas_to, "last n");
    meas_cmd->add_option("--out", meas_out, "CSV output (default: stdout)");

    auto* gen_cmd = app.add_subcommand("generate", "explicit counterexample sets");
    std::string gen_kind, gen_config, gen_out = "set.txt";
    gen_cmd->add_option("kind", gen_kind, "thmI | prime-tower | parity")->required();
    gen_cmd->add_option("--config", gen_config, "TOML parameters");
    gen_cmd->add_option("--out", gen_out, "output set file");

    auto* ver_cmd = app.add_subcommand("verify", "scenario runners with JSON reports");
    verify_args vargs;
    ver_cmd
        ->add_option("scenario", vargs.scenario,
                     "bogolyubov | bogolyubov2 | folner | thmB | hardy-cover | abb | "
                     "homomorphism | thmI | prime-tower")
        ->required();
    ver_cmd->add_option("--config", vargs.config_path, "TOML config");
    ver_cmd->add_option("--seed", vargs.seed, "64-bit seed");
    ver_cmd->add_option("--out", vargs.out_path, "JSON report path (default: stdout)");
    ver_cmd->add_option("--csv", vargs.csv_path, "report rows as a CSV table");
    ver_cmd->add_option("--plot", vargs.plot_path, "SVG plot path");
    ver_cmd->add_flag("--explain", vargs.explain, "print the resolved config as TOML and exit");

    CLI11_PARSE(app, argc, argv);
    if (threads) set_thread_cap(threads);

    try {
        if (*set_cmd) {
            auto a = load_set(set_in, set_binary);
            window_set r{window(0, 0)};
            if (set_op == "sum") {
                if (set_in2.empty()) throw config_error("set sum needs --in2");
                r = sumset(a, load_set(set_in2, set_binary));
            } else if (set_op == "diff") {
                r = difference_set(a);
            } else if (set_op == "dilate") {
                r = dilate(a, set_scalar);
            } else {
                throw config_error("unknown set op: " + set_op);
            }
            if (set_out.empty()) r.write_text(std::cout);
            else store_set(r, set_out, set_binary);
        } else if (*bohr_cmd) {
            bohr_spec spec{parse_freqs(bohr_freqs), bohr_eta};
            if (bohr_op == "enumerate") {
                auto b = enumerate_bohr(spec, parse_window(bohr_window));
                b.write_text(std::cout);
            } else if (bohr_op == "member") {
                std::cout << (bohr_member(bohr_n, spec) ? "true" : "false") << '\n';
            } else if (bohr_op == "radius") {
                if (bohr_in.empty()) throw config_error("bohr radius needs --in");
                auto x = load_set(bohr_in, false);
                auto r = max_radius_inside(spec.freqs, x);
                std::cout << "eta," << fmt_g17(r.eta) << "\nattained," << (r.attained ? 1 : 0)
                          << "\nwitness," << r.witness << '\n';
            } else {
                throw config_error("unknown bohr op: " + bohr_op);
            }
        } else if (*inter_cmd) {
            std::vector<int_poly> polys;
            for (const auto& t : inter_polys) polys.push_back(int_poly::parse(t));
            auto v = intersective_upto(polys, inter_upto, inter_second);
            if (v.pass)
                std::cout << "PASS,verified_up_to," << v.verified_up_to << '\n';
            else
                std::cout << "FAIL," << v.first_failure << ",no_root_mod_m" << '\n';
            if (!inter_csv.empty()) {
                std::ofstream f(inter_csv);
                if (!f) throw config_error("cannot open " + inter_csv);
                v.table.write_csv(f);
            }
        } else if (*weyl_cmd) {
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!weyl_out.empty()) {
                file.open(weyl_out);
                if (!file) throw config_error("cannot open " + weyl_out);
                os = &file;
            }
            *os << "N,re,im,modulus\n";
            frequency alpha = frequency::parse(weyl_alpha);
            for (std::int64_t n = 10; n <= weyl_n; n *= 10) {
                std::complex<double> v;
                if (weyl_kind == "poly")
                    v = weyl_sum(phase_spec::polynomial(int_poly::parse(weyl_poly), alpha), n);
                else if (weyl_kind == "prime")
                    v = prime_weighted_sum(int_poly::parse(weyl_poly), alpha, n);
                else if (weyl_kind == "hardy")
                    v = hardy_sum({hardy_exponent::parse(weyl_c)}, {alpha}, n);
                else
                    throw config_error("unknown weyl kind: " + weyl_kind);
                write_csv_row(*os, {std::to_string(n), fmt_g17(v.real()), fmt_g17(v.imag()),
                                    fmt_g17(std::abs(v))});
            }
        } else if (*mean_cmd) {
            weighted_mean m;
            if (mean_support == "squares") {
                std::vector<std::int64_t> pts;
                for (std::int64_t n = 1; n <= mean_n; ++n) pts.push_back(n * n);
                m = weighted_mean::uniform_on(pts);
            } else if (mean_support == "uniform") {
                m = weighted_mean::uniform(1, mean_n);
            } else if (mean_support == "primes") {
                m = weighted_mean::uniform_on(primes_upto(mean_n));
            } else if (mean_support == "csv") {
                std::ifstream f(mean_csv_in);
                if (!f) throw config_error("cannot open " + mean_csv_in);
                m = weighted_mean::read_csv(f);
            } else {
                throw config_error("unknown mean support: " + mean_support);
            }
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!mean_out.empty()) {
                file.open(mean_out);
                if (!file) throw config_error("cannot open " + mean_out);
                os = &file;
            }
            if (mean_op == "spectrum") {
                auto rep = spectrum_scan(m, mean_qmax, parse_freqs(mean_grid), mean_threshold);
                *os << "kind,frequency,re,im,modulus\n";
                for (const auto& e : rep.rational)
                    write_csv_row(*os, {"rational", e.freq.display(), fmt_g17(e.value.real()),
                                        fmt_g17(e.value.imag()), fmt_g17(std::abs(e.value))});
                for (const auto& e : rep.real)
                    write_csv_row(*os, {"real", e.freq.display(), fmt_g17(e.value.real()),
                                        fmt_g17(e.value.imag()), fmt_g17(std::abs(e.value))});
            } else if (mean_op == "accumulation") {
                std::vector<bohr_spec> specs;
                for (const auto& t : mean_grid)
                    specs.push_back(bohr_spec{{frequency::parse(t)}, 0.2});
                auto rep = massive_accumulation_probe(m, specs);
                *os << "spec,value\n";
                for (std::size_t i = 0; i < specs.size(); ++i)
                    write_csv_row(*os, {specs[i].freqs[0].display(), fmt_g17(rep.per_spec[i])});
                write_csv_row(*os, {"min", fmt_g17(rep.min_value)});
            } else if (mean_op == "annihilation") {
                auto rep = annihilation_probe(m, {torus_measure::cantor(40)});
                *os << "measure,value\n";
                write_csv_row(*os, {"cantor_1_3_depth40", fmt_g17(rep.max_value)});
            } else {
                throw config_error("unknown mean op: " + mean_op);
            }
        } else if (*meas_cmd) {
            std::ifstream f(meas_spec);
            if (!f) throw config_error("cannot open " + meas_spec);
            std::ostringstream ss;
            ss << f.rdbuf();
            auto sigma = torus_measure::from_json(ss.str());
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!meas_out.empty()) {
                file.open(meas_out);
                if (!file) throw config_error("cannot open " + meas_out);
                os = &file;
            }
            *os << "n,re,im\n";
            for (std::int64_t n = meas_from; n <= meas_to; ++n) {
                auto v = fourier(sigma, n);
                write_csv_row(*os, {std::to_string(n), fmt_g17(v.real()), fmt_g17(v.imag())});
            }
        } else if (*gen_cmd) {
            toml_table cfg;
            if (!gen_config.empty()) cfg = toml_table::parse_file(gen_config);
            if (gen_kind == "thmI") {
                thmi_config c;
                c.alpha = cfg.get_string("alpha", c.alpha);
                c.x1 = cfg.get_string("x1", c.x1);
                c.y1 = cfg.get_string("y1", c.y1);
                c.v_a = cfg.get_int("v_a", c.v_a);
                c.v_b = cfg.get_int("v_b", c.v_b);
                c.v_den = cfg.get_int("v_den", c.v_den);
                c.v_scale = cfg.get_int("v_scale", c.v_scale);
                c.v_scale_den = cfg.get_int("v_scale_den", c.v_scale_den);
                c.v_depth = static_cast<int>(cfg.get_int("v_depth", c.v_depth));
                c.n = cfg.get_int("N", c.n);
                skew_orbit_spec spec;
                spec.alpha = frequency::parse(c.alpha);
                spec.x1 = frequency::parse(c.x1);
                spec.y1 = frequency::parse(c.y1);
                fat_cantor_set v(c.v_a, c.v_b, c.v_den, c.v_scale, c.v_scale_den, c.v_depth);
                auto s = skew_orbit_set(spec, v, c.n);
                store_set(s, gen_out, false,
                          "bohrlab generate thmI alpha=" + c.alpha + " x1=" + c.x1 +
                              " y1=" + c.y1 + " N=" + std::to_string(c.n));
            } else if (gen_kind == "prime-tower") {
                tower_config c;
                if (cfg.has("primes")) c.primes = cfg.at("primes").as_int_array();
                if (cfg.has("lengths")) c.lengths = cfg.at("lengths").as_int_array();
                c.first_start = cfg.get_int("first_start", c.first_start);
                auto t = prime_tower_set(c.primes, c.lengths, c.first_start);
                store_set(t.set, gen_out, false, "bohrlab generate prime-tower");
            } else if (gen_kind == "parity") {
                auto los = cfg.has("interval_lo") ? cfg.at("interval_lo").as_int_array()
                                                  : std::vector<std::int64_t>{0, 1000, 20000};
                auto his = cfg.has("interval_hi") ? cfg.at("interval_hi").as_int_array()
                                                  : std::vector<std::int64_t>{99, 2999, 59999};
                if (los.size() != his.size()) throw config_error("parity: interval list mismatch");
                std::vector<std::pair<std::int64_t, std::int64_t>> ivs;
                for (std::size_t i = 0; i < los.size(); ++i) ivs.emplace_back(los[i], his[i]);
                auto s = parity_alternating_set(ivs, cfg.get_double("ratio", 2.0));
                store_set(s, gen_out, false, "bohrlab generate parity");
            } else {
                throw config_error("unknown generator: " + gen_kind);
            }
            std::cout << "wrote " << gen_out << '\n';
        } else if (*ver_cmd) {
            return run_verify(vargs);
        }
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << '\n';
        return 3;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
