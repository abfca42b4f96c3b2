// Copyright 2026 The GPK Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "gpk_cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "gpk/boolfn.hpp"
#include "gpk/fbi.hpp"
#include "gpk/generators.hpp"
#include "gpk/gpk.hpp"
#include "gpk/simon.hpp"
#include "gpk/version.hpp"

namespace gpk::cli {

namespace {

constexpr const char *kBitOrderNote =
    "Bit strings are written most significant position first: position 0 is the "
    "rightmost character.";

struct CommonOptions {
    std::uint64_t seed = 0;
    std::string format = "json";
};

struct GenOptions {
    std::string kind;
    int n = 0;
    int m = 0;
    int r = -1;
    int k = -1;
    std::string out;
};

struct GpkOptions {
    std::string oracle;
    std::string marker;
    std::string backend = "fwht";
};

struct FbiCliOptions {
    std::string oracle;
    int algorithm = 3;
    int r0 = 1;
    std::optional<std::uint64_t> max_calls;
    std::string backend = "fwht";
    std::uint64_t audit = 0;
};

struct SimonOptions {
    std::string oracle;
    int stall_limit = kDefaultStallLimit;
    std::uint64_t draws = 10000;
    std::string hidden;
    std::string mode = "uniform_nonzero";
    std::string marker;
};

struct VerifyOptions {
    std::string oracle;
};

struct BenchOptions {
    std::string suite;
    int trials = 10;
    int max_width = 6;
    int max_qubits = 14;
};

Json bits_json(const std::vector<BitVector> &vs) {
    Json out = Json::array();
    for (const auto &v : vs) {
        out.push_back(v.to_string());
    }
    return out;
}

Json basis_json(const SubspaceBasis &basis) { return bits_json(basis.rows()); }

std::string rational_string(const Rational &q) {
    return q.denominator() == 1 ? std::to_string(q.numerator())
                                : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Json header(const std::string &command, const CommonOptions &common) {
    Json report;
    report["tool"] = "gpk";
    report["version"] = kVersion;
    report["command"] = command;
    report["seed"] = common.seed;
    return report;
}

Json file_json(const std::string &path) {
    return Json{{"path", path}, {"sha256", sha256_file(path)}};
}

BooleanOracle load_oracle_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open oracle file '" + path + "'");
    }
    return read_oracle(in);
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw InputError("write to '" + path + "' failed");
    }
}

Backend parse_backend(const std::string &name) {
    return name == "statevector" ? Backend::statevector : Backend::fwht;
}

// ---------------------------------------------------------------------------
// gen

Json cmd_gen(const GenOptions &o, const CommonOptions &common) {
    Rng rng = make_rng(common.seed, Stream::instance);
    Json report = header("gen", common);
    report["kind"] = o.kind;
    report["n"] = o.n;
    report["m"] = o.m;

    std::optional<SubspaceBasis> hidden;
    auto oracle = [&]() -> BooleanOracle {
        if (o.kind == "constant") {
            detail::require(o.m >= 1 && o.m <= BitVector::kMaxWidth, "m out of range");
            return gen_constant(o.n, random_vector(o.m, rng));
        }
        if (o.kind == "simon") {
            detail::require(o.k >= 0, "--k is required for simon instances");
            report["k"] = o.k;
            auto inst = gen_simon(o.n, o.m, o.k, rng);
            hidden = inst.hidden;
            return std::move(inst.oracle);
        }
        detail::require(o.r >= 0, "--r is required for " + o.kind + " instances");
        report["r"] = o.r;
        if (o.kind == "affine") {
            detail::require(o.n >= 1 && o.m >= 1, "oracle widths must be positive");
            const auto matrix = random_matrix_of_rank(o.n, o.m, o.r, rng);
            return gen_affine(matrix, random_vector(o.m, rng));
        }
        return gen_fully_balanced(o.n, o.m, o.r, rng);
    }();

    write_file(o.out, format_oracle(oracle));
    report["output"] = file_json(o.out);
    if (hidden) {
        const std::string sidecar = o.out + ".hidden";
        write_file(sidecar, format_hidden(*hidden));
        report["hidden"] = file_json(sidecar);
        report["hidden"]["basis"] = basis_json(*hidden);
    }
    return report;
}

// ---------------------------------------------------------------------------
// gpk

struct Outcome {
    Json report;
    int code = kOk;
};

Outcome cmd_gpk(const GpkOptions &o, const CommonOptions &common) {
    const auto oracle = load_oracle_file(o.oracle);
    const auto y = BitVector::parse(o.marker);
    if (y.width() != oracle.output_width()) {
        throw ContractError("marker has width " + std::to_string(y.width()) + " but m = " +
                            std::to_string(oracle.output_width()));
    }

    Json report = header("gpk", common);
    report["input"] = file_json(o.oracle);
    report["n"] = oracle.input_width();
    report["m"] = oracle.output_width();
    report["marker"] = y.to_string();
    report["backend"] = o.backend;

    GpkEngine engine;
    GpkDistribution dist;
    std::optional<StatevectorRun> sv;
    if (o.backend == "fwht") {
        dist = engine.fwht_distribution(oracle, y);
    } else {
        sv = simulate_gpk_circuit(oracle, y);
        if (o.backend == "both") {
            dist = engine.fwht_distribution(oracle, y);
        } else {
            dist = sv->distribution;
        }
    }

    Json rows = Json::array();
    for (std::uint32_t z = 0; z < dist.alphas.size(); ++z) {
        rows.push_back({{"z", BitVector(dist.n, z).to_string()},
                        {"alpha", dist.alphas[z]},
                        {"probability", dist.probability(z)}});
    }
    report["distribution"] = std::move(rows);
    report["total_probability"] = dist.total_probability();

    Rng rng = make_rng(common.seed, Stream::measurements);
    const auto delta = gpk_measure(dist, rng);
    report["sample"] = delta.to_string();
    report["sample_probability"] = dist.probability(delta.bits());

    if (sv) {
        report["statevector"] = {{"max_imaginary", sv->max_imaginary},
                                 {"separation_residual", sv->separation_residual},
                                 {"joint_norm_squared", sv->joint_norm_squared}};
    }
    if (o.backend == "both") {
        report["max_amplitude_discrepancy"] = max_amplitude_discrepancy(dist, sv->distribution);
    }
    return {std::move(report), kOk};
}

// ---------------------------------------------------------------------------
// fbi

Outcome cmd_fbi(const FbiCliOptions &o, const CommonOptions &common) {
    const auto oracle = load_oracle_file(o.oracle);
    const int m = oracle.output_width();
    FbiOptions options;
    options.backend = parse_backend(o.backend);
    options.max_calls = o.max_calls;

    Rng rng = make_rng(common.seed, Stream::measurements);
    auto result = [&] {
        switch (o.algorithm) {
        case 1:
            return run_algorithm1_early_stop(oracle, o.r0, rng, options);
        case 2:
            return run_algorithm2(oracle, rng, options);
        default:
            return run_algorithm3(oracle, rng, options);
        }
    }();
    const auto &ledger = result.ledger;

    std::uint64_t bound = 0;
    switch (o.algorithm) {
    case 1:
        bound = early_stop_bound(m, o.r0);
        break;
    case 2:
        bound = algorithm2_bound(m);
        break;
    default:
        bound = algorithm3_bound(m, result.r);
        break;
    }

    Json report = header("fbi", common);
    report["input"] = file_json(o.oracle);
    report["n"] = oracle.input_width();
    report["m"] = m;
    report["algorithm"] = o.algorithm;
    if (o.algorithm == 1) {
        report["r0"] = o.r0;
    }
    report["backend"] = o.backend;
    report["r"] = result.r;
    report["gpk_calls"] = ledger.gpk_calls;
    report["call_bound"] = bound;
    report["within_bound"] = ledger.gpk_calls <= bound;

    Json trace = Json::array();
    for (const auto &e : ledger.trace) {
        trace.push_back({{"call", e.call_index},
                         {"marker", e.marker.to_string()},
                         {"outcome", e.outcome.to_string()},
                         {"class", e.constant() ? "constant" : "balanced"}});
    }
    report["trace"] = std::move(trace);
    report["constant_markers"] = bits_json(ledger.constant_markers);
    report["constant_span"] = basis_json(ledger.constant_span);
    report["balancing_classes"] = bits_json(ledger.balancing);

    // img(f) is determined once span(C) is all of C(f), i.e. dim C = m - r.
    if (ledger.constant_span.dimension() == m - result.r) {
        const auto before = oracle.query_count();
        const auto image = reconstruct_image(oracle, ledger);
        report["image"] = {{"offset", image.offset.to_string()},
                           {"direction", basis_json(image.direction)},
                           {"points", bits_json(image.points)},
                           {"classical_queries", oracle.query_count() - before}};
    } else {
        report["image"] = nullptr;
    }

    if (o.audit > 0) {
        Rng marker_rng = make_rng(common.seed, Stream::markers);
        const auto audit = audit_ledger(oracle, ledger, o.audit, marker_rng, rng, options.backend);
        report["audit"] = {{"gpk_calls", audit.probes}, {"consistent", true}};
    }
    return {std::move(report), ledger.gpk_calls <= bound ? kOk : kPromiseFailure};
}

// ---------------------------------------------------------------------------
// simon

Outcome cmd_simon(const SimonOptions &o, const CommonOptions &common) {
    const auto oracle = load_oracle_file(o.oracle);
    const int n = oracle.input_width();
    detail::require(o.draws == 0 || o.draws >= 1000, "--draws must be 0 or at least 1000");

    MarkerMode mode = UniformNonzeroMarker{};
    if (o.mode == "fixed") {
        detail::require(!o.marker.empty(), "--marker is required with --mode fixed");
        mode = FixedMarker{BitVector::parse(o.marker)};
    }

    Json report = header("simon", common);
    report["input"] = file_json(o.oracle);
    report["n"] = n;
    report["m"] = oracle.output_width();
    report["mode"] = describe(mode);
    report["stall_limit"] = o.stall_limit;

    auto streams = SimonStreams::from_seed(common.seed);
    const auto run = recover_hidden_subgroup(oracle, streams, o.stall_limit, mode);
    report["iterations"] = run.iterations;
    report["collected"] = basis_json(run.collected);
    report["recovered"] = basis_json(run.recovered);
    report["recovered_dimension"] = run.recovered.dimension();
    report["verified"] = run.verified;

    int code = run.verified ? kOk : kPromiseFailure;
    std::optional<SubspaceBasis> reference;
    if (!o.hidden.empty()) {
        const auto hidden = read_hidden(o.hidden);
        if (hidden.width() != n) {
            throw InputError("hidden basis width does not match the oracle");
        }
        report["hidden"] = file_json(o.hidden);
        report["hidden"]["basis"] = basis_json(hidden);
        const bool matches = hidden == run.recovered;
        report["matches_hidden"] = matches;
        if (!matches) {
            code = kPromiseFailure;
        }
        reference = hidden;
    } else if (run.verified) {
        reference = run.recovered;
    }

    if (o.draws > 0 && reference && verify_hidden_subgroup(oracle, *reference)) {
        const auto cmp = empirical_vs_theoretical(oracle, *reference, mode, o.draws, streams);
        Json rows = Json::array();
        for (const auto &row : cmp.rows) {
            rows.push_back({{"z", row.z.to_string()},
                            {"theoretical", row.theoretical},
                            {"empirical", row.empirical}});
        }
        report["distribution_check"] = {{"reference", o.hidden.empty() ? "recovered" : "hidden"},
                                        {"draws", o.draws},
                                        {"tv_distance", cmp.tv_distance},
                                        {"rows", std::move(rows)}};
    } else {
        report["distribution_check"] = nullptr;
    }
    return {std::move(report), code};
}

// ---------------------------------------------------------------------------
// verify

Json cmd_verify(const VerifyOptions &o, const CommonOptions &common) {
    const auto oracle = load_oracle_file(o.oracle);
    const auto census = marker_census(oracle);
    const auto image = image_analysis(oracle);

    Json report = header("verify", common);
    report["input"] = file_json(o.oracle);
    report["n"] = oracle.input_width();
    report["m"] = oracle.output_width();
    report["fully_balanced"] = census.fully_balanced();
    report["neither_witness"] =
        census.neither_witness ? Json(census.neither_witness->to_string()) : Json(nullptr);
    report["image"] = {{"dimension", image.dimension()},
                       {"size", image.points.size()},
                       {"affine", image.is_affine},
                       {"uniform_multiplicities", image.uniform},
                       {"points", bits_json(image.points)}};
    report["constant_count"] = census.constant_count;
    report["balancing_count"] = census.balancing_set.size();
    report["balancing_index"] = rational_string(census.balancing_index());
    report["constant_set"] = basis_json(census.constant_set);
    return report;
}

// ---------------------------------------------------------------------------
// bench

BooleanOracle random_oracle(int n, int m, Rng &rng) {
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (auto &v : table) {
        v = random_vector(m, rng).bits();
    }
    return {n, m, std::move(table)};
}

template <typename Fn>
double seconds_per_call(int repeats, Fn &&fn) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) {
        fn();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() / repeats;
}

Json bench_fwht_scaling(const BenchOptions &o, Rng &rng) {
    detail::require(o.max_qubits >= 2 && o.max_qubits <= kMaxSimulatedQubits,
                    "--max-qubits must lie in [2, 22]");
    Json rows = Json::array();
    for (int total = 2; total <= o.max_qubits; total += 2) {
        const int n = (total + 1) / 2;
        const int m = total - n;
        const auto oracle = random_oracle(n, m, rng);
        const auto y = random_vector(m, rng);
        GpkEngine engine;
        const auto fwht = engine.fwht_distribution(oracle, y);
        const auto sv = simulate_gpk_circuit(oracle, y);
        const double t_fwht = seconds_per_call(o.trials, [&] { (void)walsh_spectrum(oracle, y); });
        const double t_sv = seconds_per_call(o.trials, [&] { (void)simulate_gpk_circuit(oracle, y); });
        rows.push_back({{"n", n},
                        {"m", m},
                        {"qubits", total},
                        {"max_amplitude_discrepancy", max_amplitude_discrepancy(fwht, sv.distribution)},
                        {"timing", {{"fwht_seconds", t_fwht}, {"statevector_seconds", t_sv}}}});
    }
    return rows;
}

Json bench_fbi_calls(const BenchOptions &o, Rng &rng, bool &ok) {
    Json rows = Json::array();
    for (int n = 1; n <= o.max_width; ++n) {
        for (int m = 1; m <= o.max_width; ++m) {
            for (int r = 0; r <= std::min(n, m); ++r) {
                std::uint64_t worst = 0;
                std::uint64_t total = 0;
                int correct = 0;
                for (int t = 0; t < o.trials; ++t) {
                    const auto oracle = gen_fully_balanced(n, m, r, rng);
                    const auto result = run_algorithm3(oracle, rng);
                    worst = std::max(worst, result.ledger.gpk_calls);
                    total += result.ledger.gpk_calls;
                    correct += result.r == r ? 1 : 0;
                }
                const auto bound = algorithm3_bound(m, r);
                ok = ok && worst <= bound && correct == o.trials;
                rows.push_back({{"n", n},
                                {"m", m},
                                {"r", r},
                                {"trials", o.trials},
                                {"max_calls", worst},
                                {"mean_calls", static_cast<double>(total) / o.trials},
                                {"bound", bound},
                                {"within_bound", worst <= bound},
                                {"r_correct", correct}});
            }
        }
    }
    return rows;
}

Json iteration_summary(const std::vector<SimonRun> &runs) {
    std::map<std::uint64_t, int> histogram;
    std::uint64_t total = 0;
    int verified = 0;
    for (const auto &run : runs) {
        ++histogram[run.iterations];
        total += run.iterations;
        verified += run.verified ? 1 : 0;
    }
    Json hist = Json::object();
    for (const auto &[iterations, count] : histogram) {
        hist[std::to_string(iterations)] = count;
    }
    return {{"mean_iterations", static_cast<double>(total) / static_cast<double>(runs.size())},
            {"verified", verified},
            {"histogram", std::move(hist)}};
}

Json bench_simon_iters(const BenchOptions &o, Rng &rng) {
    Json rows = Json::array();
    for (int n = 2; n <= o.max_width; ++n) {
        for (int k = 1; k < n; ++k) {
            std::vector<SimonRun> uniform;
            std::vector<SimonRun> fixed;
            for (int t = 0; t < o.trials; ++t) {
                const auto inst = gen_simon(n, n, k, rng);
                SimonStreams a{Rng(rng()), Rng(rng())};
                uniform.push_back(recover_hidden_subgroup(inst.oracle, a));
                SimonStreams b{Rng(rng()), Rng(rng())};
                const auto y = draw_marker(UniformNonzeroMarker{}, n, rng);
                fixed.push_back(recover_hidden_subgroup(inst.oracle, b, kDefaultStallLimit,
                                                        FixedMarker{y}));
            }
            rows.push_back({{"n", n},
                            {"m", n},
                            {"k", k},
                            {"trials", o.trials},
                            {"uniform_nonzero", iteration_summary(uniform)},
                            {"fixed_marker", iteration_summary(fixed)}});
        }
    }
    return rows;
}

Outcome cmd_bench(const BenchOptions &o, const CommonOptions &common) {
    detail::require(o.trials >= 1, "--trials must be at least 1");
    detail::require(o.max_width >= 1 && o.max_width <= 10, "--max-width must lie in [1, 10]");
    Rng rng = make_rng(common.seed, Stream::instance);
    Json report = header("bench", common);
    report["suite"] = o.suite;
    report["trials"] = o.trials;
    bool ok = true;
    if (o.suite == "fwht_scaling") {
        report["max_qubits"] = o.max_qubits;
        report["rows"] = bench_fwht_scaling(o, rng);
    } else if (o.suite == "fbi_calls") {
        report["max_width"] = o.max_width;
        report["rows"] = bench_fbi_calls(o, rng, ok);
        report["all_within_bound"] = ok;
    } else {
        report["max_width"] = o.max_width;
        report["rows"] = bench_simon_iters(o, rng);
    }
    return {std::move(report), ok ? kOk : kPromiseFailure};
}

// ---------------------------------------------------------------------------

void flatten(const Json &node, const std::string &prefix, std::string &out) {
    if (node.is_object()) {
        for (const auto &[key, value] : node.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    if (node.is_array()) {
        const bool scalars = std::none_of(node.begin(), node.end(), [](const Json &v) {
            return v.is_structured();
        });
        if (scalars) {
            out += prefix + ":";
            for (const auto &v : node) {
                out += " " + (v.is_string() ? v.get<std::string>() : v.dump());
            }
            out += "\n";
            return;
        }
        for (std::size_t i = 0; i < node.size(); ++i) {
            flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    out += prefix + ": " + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
}

void add_common(CLI::App *sub, CommonOptions &common) {
    sub->add_option("--seed", common.seed, "64-bit seed; fixes every random choice");
    sub->add_option("--format", common.format, "Report format")
        ->check(CLI::IsMember({"json", "text"}));
}

} // namespace

std::string sha256_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 unavailable");
    }
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        if (in.gcount() > 0) {
            EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
        }
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string render_text(const Json &report) {
    std::string out;
    flatten(report, "", out);
    return out;
}

std::string format_hidden(const SubspaceBasis &basis) {
    std::string out = "# hidden subgroup basis\n" + std::to_string(basis.width()) + " " +
                      std::to_string(basis.dimension()) + "\n";
    for (const auto &row : basis.rows()) {
        out += row.to_string() + "\n";
    }
    return out;
}

SubspaceBasis read_hidden(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open hidden basis '" + path + "'");
    }
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        line = detail::strip_comment(line);
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        throw InputError("hidden basis '" + path + "' is empty");
    }
    std::istringstream head(lines.front());
    int n = 0;
    int k = 0;
    if (!(head >> n >> k) || n < 1 || n > BitVector::kMaxWidth || k < 0 || k > n ||
        lines.size() != static_cast<std::size_t>(k) + 1) {
        throw InputError("hidden basis '" + path + "' has a malformed header");
    }
    SubspaceBasis basis(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = BitVector::parse(lines[i]);
        if (row.width() != n || !basis.insert(row)) {
            throw InputError("hidden basis '" + path + "' has a bad row: " + lines[i]);
        }
    }
    return basis;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Generalised phase kick-back toolkit", "gpk"};
    app.footer(kBitOrderNote);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOptions common;
    GenOptions gen;
    GpkOptions gpk_opts;
    FbiCliOptions fbi;
    SimonOptions simon;
    VerifyOptions verify;
    BenchOptions bench;

    auto *gen_cmd = app.add_subcommand("gen", "Write a random oracle file");
    gen_cmd->add_option("--kind", gen.kind, "Instance family")
        ->required()
        ->check(CLI::IsMember({"fully_balanced", "simon", "affine", "constant"}));
    gen_cmd->add_option("--n", gen.n, "Input width")->required();
    gen_cmd->add_option("--m", gen.m, "Output width")->required();
    gen_cmd->add_option("--r", gen.r, "Image dimension (fully_balanced, affine)");
    gen_cmd->add_option("--k", gen.k, "Hidden subgroup dimension (simon)");
    gen_cmd->add_option("--out", gen.out, "Oracle file to write; simon also writes <out>.hidden")
        ->required();
    add_common(gen_cmd, common);

    auto *gpk_cmd = app.add_subcommand("gpk", "Run GPK once and print its distribution");
    gpk_cmd->add_option("--oracle", gpk_opts.oracle, "Oracle file")->required();
    gpk_cmd->add_option("--marker", gpk_opts.marker, "Marker y, m bits")->required();
    gpk_cmd->add_option("--backend", gpk_opts.backend, "Simulator")
        ->check(CLI::IsMember({"fwht", "statevector", "both"}));
    add_common(gpk_cmd, common);

    auto *fbi_cmd = app.add_subcommand("fbi", "Find r = dim img(f) of a fully balanced oracle");
    fbi_cmd->add_option("--oracle", fbi.oracle, "Oracle file")->required();
    fbi_cmd->add_option("--algorithm", fbi.algorithm, "1: r in {0, r0}; 2: r in {1, 2}; 3: any r")
        ->check(CLI::IsMember({1, 2, 3}));
    fbi_cmd->add_option("--r0", fbi.r0, "Candidate nonzero r for algorithm 1");
    fbi_cmd->add_option("--max-calls", fbi.max_calls, "Abort after this many GPK calls");
    fbi_cmd->add_option("--backend", fbi.backend, "Simulator")
        ->check(CLI::IsMember({"fwht", "statevector"}));
    fbi_cmd->add_option("--audit", fbi.audit, "Extra GPK probes checking the promise");
    add_common(fbi_cmd, common);

    auto *simon_cmd = app.add_subcommand("simon", "Recover the hidden subgroup of a Simon oracle");
    simon_cmd->add_option("--oracle", simon.oracle, "Oracle file")->required();
    simon_cmd->add_option("--stall-limit", simon.stall_limit,
                          "Stop after this many samples that do not grow the span");
    simon_cmd->add_option("--draws", simon.draws, "Samples for the distribution check (0 skips)");
    simon_cmd->add_option("--hidden", simon.hidden, "Expected basis sidecar written by gen");
    simon_cmd->add_option("--mode", simon.mode, "Marker selection")
        ->check(CLI::IsMember({"uniform_nonzero", "fixed"}));
    simon_cmd->add_option("--marker", simon.marker, "Marker for --mode fixed");
    add_common(simon_cmd, common);

    auto *verify_cmd = app.add_subcommand("verify", "Classical census of an oracle");
    verify_cmd->add_option("--oracle", verify.oracle, "Oracle file")->required();
    add_common(verify_cmd, common);

    auto *bench_cmd = app.add_subcommand("bench", "Benchmark and query-count tables");
    bench_cmd->add_option("--suite", bench.suite, "Benchmark")
        ->required()
        ->check(CLI::IsMember({"fwht_scaling", "fbi_calls", "simon_iters"}));
    bench_cmd->add_option("--trials", bench.trials, "Instances or repeats per row");
    bench_cmd->add_option("--max-width", bench.max_width, "Largest n and m swept");
    bench_cmd->add_option("--max-qubits", bench.max_qubits, "Largest n + m for fwht_scaling");
    add_common(bench_cmd, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        Outcome outcome;
        if (gen_cmd->parsed()) {
            outcome.report = cmd_gen(gen, common);
        } else if (gpk_cmd->parsed()) {
            outcome = cmd_gpk(gpk_opts, common);
        } else if (fbi_cmd->parsed()) {
            outcome = cmd_fbi(fbi, common);
        } else if (simon_cmd->parsed()) {
            outcome = cmd_simon(simon, common);
        } else if (verify_cmd->parsed()) {
            outcome.report = cmd_verify(verify, common);
        } else {
            outcome = cmd_bench(bench, common);
        }
        out << (common.format == "text" ? render_text(outcome.report)
                                        : outcome.report.dump(2) + "\n");
        if (outcome.code != kOk) {
            err << "gpk: verification failed\n";
        }
        return outcome.code;
    } catch (const PromiseViolation &e) {
        err << "gpk: promise violation: " << e.what() << "\n";
        return kPromiseFailure;
    } catch (const ResourceError &e) {
        err << "gpk: resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const ContractError &e) {
        err << "gpk: invalid input: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError &e) {
        err << "gpk: parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError &e) {
        err << "gpk: " << e.what() << "\n";
        return kInputError;
    }
}

} // namespace gpk::cli
