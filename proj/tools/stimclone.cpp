// stimclone: command-line front end for the stimulated-emission cloning
// simulator.  Subcommands:
//
//   evolve          amplitudes / emission probabilities over a time grid
//   fidelity-table  per-emission-count fidelity and probability table
//   verify          named invariant suites with a machine-readable report
//   sweep           mean clone number and average fidelity over (N, m, t)
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 resource ceiling exceeded.

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stimclone/analysis.hpp"
#include "stimclone/fock.hpp"
#include "stimclone/ladder.hpp"
#include "stimclone/lambda_system.hpp"
#include "stimclone/oscillator.hpp"
#include "stimclone/serialize.hpp"
#include "stimclone/tensor.hpp"
#include "stimclone/v_system.hpp"
#include "stimclone/verify.hpp"

namespace sc = stimclone;
using Complex = std::complex<double>;

namespace {

// ---------------------------------------------------------------------------
// Configuration.
// ---------------------------------------------------------------------------
struct RunConfig {
    std::string model = "osc";
    std::vector<int> n_values = {1};
    std::vector<int> m_values = {1};
    double gamma = 1.0;
    std::vector<double> times = {0.0};
    std::array<double, 4> pol = {1.0, 0.0, 0.0, 0.0};
    std::string format = "json";
    std::string out;
    int dense_threshold = 2000;
    unsigned seed = 2026;
    int r = 2;
    long max_states = 20000;
};

const std::vector<std::string> kModels = {"lambda",  "osc",           "osc1",       "vpair",
                                          "ladder",  "classical-pump", "generalized"};

std::vector<double> parse_time_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
            throw std::invalid_argument("time grid '" + text + "' is not start:stop:step");
        if (step <= 0.0) throw std::invalid_argument("time grid step must be positive");
        for (double t = start; t <= stop + 1e-9 * step; t += step) grid.push_back(t);
        return grid;
    }
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (cell.empty()) throw std::invalid_argument("time grid has an empty entry");
        grid.push_back(std::stod(cell));
    }
    return grid;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (cell.empty()) throw std::invalid_argument(std::string(what) + " has an empty entry");
        values.push_back(std::stoi(cell));
    }
    if (values.empty()) throw std::invalid_argument(std::string(what) + " is empty");
    return values;
}

std::array<double, 4> parse_pol(const std::string& text) {
    std::array<double, 4> pol{};
    std::istringstream in(text);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(in, cell, ',')) {
        if (k >= 4) throw std::invalid_argument("polarization needs exactly four numbers");
        pol[k++] = std::stod(cell);
    }
    if (k != 4) throw std::invalid_argument("polarization needs exactly four numbers");
    return pol;
}

void validate_config(const RunConfig& cfg, bool wants_single_size) {
    if (std::find(kModels.begin(), kModels.end(), cfg.model) == kModels.end())
        throw std::invalid_argument("unknown model '" + cfg.model + "'");
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("format must be json or csv");
    if (cfg.times.empty()) throw std::invalid_argument("time grid is empty");
    for (std::size_t i = 1; i < cfg.times.size(); ++i)
        if (cfg.times[i] <= cfg.times[i - 1])
            throw std::invalid_argument("time grid must be strictly increasing");
    for (int n : cfg.n_values)
        if (n < 0) throw std::invalid_argument("N must be non-negative");
    for (int m : cfg.m_values)
        if (m < 0) throw std::invalid_argument("m must be non-negative");
    if (wants_single_size && (cfg.n_values.size() != 1 || cfg.m_values.size() != 1))
        throw std::invalid_argument("this subcommand takes a single --n and a single --m");
    const double power = cfg.pol[0] * cfg.pol[0] + cfg.pol[1] * cfg.pol[1] +
                         cfg.pol[2] * cfg.pol[2] + cfg.pol[3] * cfg.pol[3];
    if (std::abs(power - 1.0) > 1e-6)
        throw std::invalid_argument("polarization is not normalized (|alpha|^2+|beta|^2 = " +
                                    std::to_string(power) + ")");
    if (cfg.max_states < 1) throw std::invalid_argument("max-states must be positive");
    if (cfg.r < 1) throw std::invalid_argument("r must be at least 1");
}

// Strict JSON config loader; flags override these values afterwards.
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "model") cfg.model = value.get<std::string>();
        else if (key == "n") {
            if (value.is_array()) cfg.n_values = value.get<std::vector<int>>();
            else cfg.n_values = {value.get<int>()};
        } else if (key == "m") {
            if (value.is_array()) cfg.m_values = value.get<std::vector<int>>();
            else cfg.m_values = {value.get<int>()};
        } else if (key == "gamma") cfg.gamma = value.get<double>();
        else if (key == "t") {
            if (value.is_array()) cfg.times = value.get<std::vector<double>>();
            else cfg.times = parse_time_grid(value.get<std::string>());
        } else if (key == "pol") {
            const auto v = value.get<std::vector<double>>();
            if (v.size() != 4)
                throw std::invalid_argument("config pol needs exactly four numbers");
            std::copy(v.begin(), v.end(), cfg.pol.begin());
        } else if (key == "format") cfg.format = value.get<std::string>();
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "dense_threshold") cfg.dense_threshold = value.get<int>();
        else if (key == "seed") cfg.seed = value.get<unsigned>();
        else if (key == "r") cfg.r = value.get<int>();
        else if (key == "max_states") cfg.max_states = value.get<long>();
        else throw std::invalid_argument("config file has unknown key '" + key + "'");
    }
}

sc::ser::Object config_echo(const RunConfig& cfg) {
    sc::ser::Object echo;
    echo["model"] = cfg.model;
    sc::ser::Array ns, ms, ts, pol;
    for (int n : cfg.n_values) ns.push_back(n);
    for (int m : cfg.m_values) ms.push_back(m);
    for (double t : cfg.times) ts.push_back(t);
    for (double p : cfg.pol) pol.push_back(p);
    echo["n"] = std::move(ns);
    echo["m"] = std::move(ms);
    echo["t"] = std::move(ts);
    echo["pol"] = std::move(pol);
    echo["gamma"] = cfg.gamma;
    echo["dense_threshold"] = cfg.dense_threshold;
    echo["seed"] = static_cast<std::int64_t>(cfg.seed);
    echo["r"] = cfg.r;
    echo["max_states"] = static_cast<std::int64_t>(cfg.max_states);
    return echo;
}

void write_payload(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
    out << payload;
}

sc::propagate::EvolveOptions evolve_options(const RunConfig& cfg) {
    sc::propagate::EvolveOptions options;
    options.dense_threshold = cfg.dense_threshold;
    options.max_dimension = static_cast<int>(cfg.max_states);
    return options;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------
struct EvolveRecord {
    double t = 0.0;
    int l = 0;
    bool has_amplitude = false;
    Complex f{};
    double p = 0.0;
};

// Singlet-sector states: report the rung overlaps f_l and probabilities.
void append_singlet_records(const sc::fock::StateVector& state, double t,
                            std::vector<EvolveRecord>& records) {
    const auto& basis = state.basis;
    const int N = sc::analysis::emitter_count(*basis);
    const auto p = sc::analysis::sector_probabilities(state);
    for (int l = 0; l <= N; ++l) {
        EvolveRecord rec;
        rec.t = t;
        rec.l = l;
        rec.has_amplitude = true;
        rec.f = sc::fock::overlap(sc::ladder::construct_F_l(basis, l), state);
        rec.p = p[static_cast<std::size_t>(l)];
        records.push_back(rec);
    }
}

std::vector<EvolveRecord> run_evolve(const RunConfig& cfg) {
    const int N = cfg.n_values.front();
    const int m = cfg.m_values.front();
    const auto options = evolve_options(cfg);
    std::vector<EvolveRecord> records;

    if (cfg.model == "ladder") {
        for (const double t : cfg.times) {
            const auto coeff = sc::ladder::evolve_ladder(N, m, cfg.gamma, t);
            for (int l = 0; l <= N; ++l) {
                EvolveRecord rec;
                rec.t = t;
                rec.l = l;
                rec.has_amplitude = true;
                rec.f = coeff.f[l];
                rec.p = std::norm(coeff.f[l]);
                records.push_back(rec);
            }
        }
    } else if (cfg.model == "osc") {
        const auto basis = sc::osc::singlet_basis(N, m, static_cast<std::size_t>(cfg.max_states));
        const auto h = sc::osc::build_singlet_on(basis, cfg.gamma);
        const auto psi0 = sc::osc::pump_initial_state(basis, m, N);
        for (const double t : cfg.times)
            append_singlet_records(sc::fock::evolve(h, psi0, t, options), t, records);
    } else if (cfg.model == "osc1") {
        const auto basis = sc::osc::aligned_basis(N, m, static_cast<std::size_t>(cfg.max_states));
        const auto target = sc::osc::singlet_basis(N, m, static_cast<std::size_t>(cfg.max_states));
        const auto h = sc::osc::build_aligned_on(basis, cfg.gamma);
        const auto psi0 = sc::osc::pump_initial_state(basis, m, N);
        for (const double t : cfg.times)
            append_singlet_records(
                sc::osc::to_singlet_frame(sc::fock::evolve(h, psi0, t, options), target), t,
                records);
    } else if (cfg.model == "lambda") {
        const int cap = m + N;
        const auto h = sc::lambda::build_lambda_hamiltonian(N, cfg.gamma, cap, cfg.max_states);
        const auto psi0 = sc::lambda::lambda_initial_state(N, m, cap);
        const auto target = sc::osc::singlet_basis(N, m, static_cast<std::size_t>(cfg.max_states));
        for (const double t : cfg.times)
            append_singlet_records(
                sc::lambda::map_to_oscillator(sc::tensor::evolve(h, psi0, t, options), target), t,
                records);
    } else if (cfg.model == "vpair") {
        const int pairs = N;
        const int cap = m + pairs;
        const auto h = sc::vsys::build_v_hamiltonian(2 * pairs, cfg.gamma, cap, cfg.max_states);
        const auto psi0 = sc::vsys::singlet_initial_state(pairs, m, cap);
        const auto target =
            sc::osc::singlet_basis(pairs, m, static_cast<std::size_t>(cfg.max_states));
        for (const double t : cfg.times)
            append_singlet_records(
                sc::lambda::map_to_oscillator(
                    sc::vsys::pair_substitution_map(sc::tensor::evolve(h, psi0, t, options),
                                                    pairs),
                    target),
                t, records);
    } else if (cfg.model == "classical-pump") {
        // For this model --n is the cap on emitted pairs (there is no pump
        // mode to deplete).
        const auto h = sc::osc::build_classical_pump(m, cfg.gamma, N,
                                                     static_cast<std::size_t>(cfg.max_states));
        const auto psi0 = sc::osc::pump_initial_state(h.basis, m, 0);
        for (const double t : cfg.times) {
            const auto p =
                sc::osc::emission_distribution(sc::fock::evolve(h, psi0, t, options));
            for (std::size_t l = 0; l < p.size(); ++l) {
                EvolveRecord rec;
                rec.t = t;
                rec.l = static_cast<int>(l);
                rec.p = p[l];
                records.push_back(rec);
            }
        }
    } else if (cfg.model == "generalized") {
        sc::osc::OscillatorModelSpec spec;
        spec.N = N;
        spec.m = m;
        spec.gamma = cfg.gamma;
        spec.variant = sc::osc::Variant::generalized;
        spec.r = cfg.r;
        const auto h = sc::osc::build_generalized(spec, static_cast<std::size_t>(cfg.max_states));
        const auto psi0 = sc::osc::pump_initial_state(h.basis, m, N);
        for (const double t : cfg.times) {
            const auto p =
                sc::osc::emission_distribution(sc::fock::evolve(h, psi0, t, options));
            for (std::size_t l = 0; l < p.size(); ++l) {
                EvolveRecord rec;
                rec.t = t;
                rec.l = static_cast<int>(l);
                rec.p = p[l];
                records.push_back(rec);
            }
        }
    }
    return records;
}

int cmd_evolve(const RunConfig& cfg) {
    const auto records = run_evolve(cfg);
    if (cfg.format == "csv") {
        const bool amp = !records.empty() && records.front().has_amplitude;
        std::string payload =
            amp ? sc::ser::csv_line({"t", "l", "re", "im", "p"}) : sc::ser::csv_line({"t", "l", "p"});
        for (const auto& rec : records) {
            std::vector<std::string> cells = {sc::ser::format_double(rec.t),
                                              std::to_string(rec.l)};
            if (amp) {
                cells.push_back(sc::ser::format_double(rec.f.real()));
                cells.push_back(sc::ser::format_double(rec.f.imag()));
            }
            cells.push_back(sc::ser::format_double(rec.p));
            payload += sc::ser::csv_line(cells);
        }
        write_payload(cfg, payload);
        return 0;
    }
    sc::ser::Array items;
    for (const auto& rec : records) {
        sc::ser::Object row;
        row["t"] = rec.t;
        row["l"] = rec.l;
        if (rec.has_amplitude) {
            row["re"] = rec.f.real();
            row["im"] = rec.f.imag();
        }
        row["p"] = rec.p;
        items.push_back(std::move(row));
    }
    sc::ser::Object doc;
    doc["command"] = "evolve";
    doc["config"] = config_echo(cfg);
    doc["records"] = std::move(items);
    write_payload(cfg, sc::ser::dump(doc) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// fidelity-table
// ---------------------------------------------------------------------------
int cmd_fidelity_table(const RunConfig& cfg) {
    const int N = cfg.n_values.front();
    const int m = cfg.m_values.front();
    if (m < 1)
        throw std::invalid_argument("fidelity-table requires at least one seed photon (m >= 1)");
    if (cfg.model != "osc" && cfg.model != "ladder")
        throw std::invalid_argument(
            "fidelity-table uses the exact emission-ladder dynamics; use --model osc or ladder");

    struct Row {
        double t;
        int l;
        double fidelity;
        double probability;
    };
    std::vector<Row> rows;
    for (const double t : cfg.times) {
        const auto stats =
            sc::ladder::clone_number_distribution(sc::ladder::evolve_ladder(N, m, cfg.gamma, t));
        for (int l = 0; l <= N; ++l)
            rows.push_back({t, l, stats.fidelity[static_cast<std::size_t>(l)],
                            stats.p[static_cast<std::size_t>(l)]});
    }

    if (cfg.format == "csv") {
        std::string payload = sc::ser::csv_line({"t", "l", "fidelity", "probability"});
        for (const auto& row : rows)
            payload += sc::ser::csv_line({sc::ser::format_double(row.t), std::to_string(row.l),
                                          sc::ser::format_double(row.fidelity),
                                          sc::ser::format_double(row.probability)});
        write_payload(cfg, payload);
        return 0;
    }
    sc::ser::Array items;
    for (const auto& row : rows) {
        sc::ser::Object fields;
        fields["t"] = row.t;
        fields["l"] = row.l;
        fields["fidelity"] = row.fidelity;
        fields["probability"] = row.probability;
        items.push_back(std::move(fields));
    }
    sc::ser::Object doc;
    doc["command"] = "fidelity-table";
    doc["config"] = config_echo(cfg);
    doc["rows"] = std::move(items);
    write_payload(cfg, sc::ser::dump(doc) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    const auto reports = sc::verify::run_suites(suite, cfg.seed);
    for (const auto& report : reports)
        std::cerr << (report.pass ? "[PASS] " : "[FAIL] ") << report.check
                  << " (max deviation " << sc::ser::format_double(report.max_deviation)
                  << ", tolerance " << sc::ser::format_double(report.tolerance) << ")\n";
    const bool passed = sc::verify::all_pass(reports);
    std::cerr << (passed ? "verify: all checks passed\n" : "verify: FAILURES present\n");

    sc::ser::Object doc;
    doc["command"] = "verify";
    doc["suite"] = suite;
    doc["passed"] = passed;
    doc["checks"] = sc::verify::to_json(reports);
    write_payload(cfg, sc::ser::dump(doc) + "\n");
    return passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------
int cmd_sweep(const RunConfig& cfg) {
    if (cfg.model != "osc" && cfg.model != "ladder")
        throw std::invalid_argument(
            "sweep uses the exact emission-ladder dynamics; use --model osc or ladder");
    for (int m : cfg.m_values)
        if (m < 1) throw std::invalid_argument("sweep requires m >= 1 for the fidelity column");

    struct Row {
        int N;
        int m;
        double t;
        double mean_clones;
        double avg_fidelity;
    };
    std::vector<Row> rows;
    for (const int N : cfg.n_values)
        for (const int m : cfg.m_values)
            for (const double t : cfg.times) {
                const auto stats = sc::ladder::clone_number_distribution(
                    sc::ladder::evolve_ladder(N, m, cfg.gamma, t));
                rows.push_back(
                    {N, m, t, stats.mean_clones, sc::ladder::weighted_average_fidelity(stats)});
            }

    if (cfg.format == "json") {
        sc::ser::Array items;
        for (const auto& row : rows) {
            sc::ser::Object fields;
            fields["N"] = row.N;
            fields["m"] = row.m;
            fields["gamma"] = cfg.gamma;
            fields["t"] = row.t;
            fields["mean_clones"] = row.mean_clones;
            fields["avg_fidelity"] = row.avg_fidelity;
            items.push_back(std::move(fields));
        }
        sc::ser::Object doc;
        doc["command"] = "sweep";
        doc["config"] = config_echo(cfg);
        doc["rows"] = std::move(items);
        write_payload(cfg, sc::ser::dump(doc) + "\n");
        return 0;
    }
    std::string payload = sc::ser::csv_line({"N", "m", "gamma", "t", "mean_clones", "avg_fidelity"});
    for (const auto& row : rows)
        payload += sc::ser::csv_line({std::to_string(row.N), std::to_string(row.m),
                                      sc::ser::format_double(cfg.gamma),
                                      sc::ser::format_double(row.t),
                                      sc::ser::format_double(row.mean_clones),
                                      sc::ser::format_double(row.avg_fidelity)});
    write_payload(cfg, payload);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "stimclone: exact simulator for optimal quantum cloning by stimulated emission.\n"
        "Models: lambda (three-level emitters), osc (five coupled oscillators,\n"
        "singlet-form coupling), osc1 (aligned-coupling variant), vpair (pairs of\n"
        "two-excited-level emitters), ladder (exact emission-number dynamics),\n"
        "classical-pump (undepleted pump; --n caps the emitted pairs),\n"
        "generalized (r photon/emitter mode pairs; see --r).\n"
        "Exit codes: 0 ok, 1 verification failure, 2 bad configuration, 3 resource ceiling."};
    app.require_subcommand(1);

    std::string model, n_text, m_text, t_text, pol_text, config_path;
    double gamma_flag = 1.0;
    std::string format_flag = "json", out_flag;
    unsigned seed_flag = 2026;
    int dense_flag = 2000, r_flag = 2;
    long max_states_flag = 20000;
    RunConfig cfg;

    app.add_option("--model", model, "Model variant")->check(CLI::IsMember(kModels));
    app.add_option("--n", n_text,
                   "Emitter count N (pairs for vpair; emitted-pair cap for classical-pump); "
                   "sweep accepts a comma list");
    app.add_option("--m", m_text, "Seed photon count m; sweep accepts a comma list");
    app.add_option("--gamma", gamma_flag, "Coupling strength");
    app.add_option("--t", t_text, "Time grid: comma list or start:stop:step");
    app.add_option("--pol", pol_text,
                   "Seed polarization re,im,re,im (alpha then beta). Dynamics is "
                   "polarization-covariant (run 'verify universality'), so amplitudes are "
                   "reported in the polarization's own frame");
    app.add_option("--format", format_flag, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_flag, "Output path (default stdout)");
    app.add_option("--seed", seed_flag, "Random seed for polarization sampling");
    app.add_option("--dense-threshold", dense_flag,
                   "Largest dimension evolved by eigendecomposition; above it, polynomial stepping");
    app.add_option("--r", r_flag, "Mode-pair count for the generalized model");
    app.add_option("--max-states", max_states_flag, "Resource ceiling on basis dimension");
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    auto* evolve_cmd = app.add_subcommand(
        "evolve", "Emission amplitudes and probabilities over the time grid: one record per "
                  "(t, l) with re/im of the l-th emission amplitude and its probability "
                  "(probability-only for classical-pump and generalized)");
    auto* table_cmd = app.add_subcommand(
        "fidelity-table", "Columns t,l,fidelity,probability for l = 0..N: the polarization "
                          "match after l emissions and the probability of l emissions");
    auto* verify_cmd = app.add_subcommand(
        "verify", "Run named invariant suites; JSON report to stdout (or --out), human "
                  "summary to stderr");
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Columns N,m,gamma,t,mean_clones,avg_fidelity over the (N, m, t) grid");
    for (auto* sub : {evolve_cmd, table_cmd, verify_cmd, sweep_cmd}) sub->fallthrough();

    std::string suite = "all";
    verify_cmd->add_option("suite", suite,
                           "Suite: schwinger, lambda-osc, vpair, ladder, universality, bh, "
                           "pdc-limit, or all")
        ->check(CLI::IsMember({"schwinger", "lambda-osc", "vpair", "ladder", "universality",
                               "bh", "pdc-limit", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (app.count("--model") > 0) cfg.model = model;
        if (app.count("--n") > 0) cfg.n_values = parse_int_list(n_text, "N list");
        if (app.count("--m") > 0) cfg.m_values = parse_int_list(m_text, "m list");
        if (app.count("--t") > 0) cfg.times = parse_time_grid(t_text);
        if (app.count("--pol") > 0) cfg.pol = parse_pol(pol_text);
        if (app.count("--gamma") > 0) cfg.gamma = gamma_flag;
        if (app.count("--format") > 0) cfg.format = format_flag;
        if (app.count("--out") > 0) cfg.out = out_flag;
        if (app.count("--seed") > 0) cfg.seed = seed_flag;
        if (app.count("--dense-threshold") > 0) cfg.dense_threshold = dense_flag;
        if (app.count("--r") > 0) cfg.r = r_flag;
        if (app.count("--max-states") > 0) cfg.max_states = max_states_flag;
        validate_config(cfg, app.got_subcommand(evolve_cmd) || app.got_subcommand(table_cmd));

        if (app.got_subcommand(evolve_cmd)) return cmd_evolve(cfg);
        if (app.got_subcommand(table_cmd)) return cmd_fidelity_table(cfg);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(cfg, suite);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(cfg);
        return 2;
    } catch (const sc::resource_error& e) {
        std::cerr << "resource ceiling: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
}
