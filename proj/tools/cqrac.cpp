// Copyright 2026 The cqrac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqrac/analysis.hpp"
#include "cqrac/contexts.hpp"
#include "cqrac/encoder.hpp"
#include "cqrac/retrieval.hpp"
#include "cqrac/sweep2q.hpp"
#include "cqrac/tableau.hpp"
#include "nlohmann/json.hpp"

namespace {

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kResource = 4;
constexpr int kVerification = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write " + path);
}

// Bit-string parser for data files: '0'/'1' characters, whitespace ignored.
std::vector<uint8_t> parse_bits(const std::string &text) {
    std::vector<uint8_t> bits;
    for (char c : text) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<uint8_t>(c - '0'));
        } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            throw std::invalid_argument(
                std::string("data file holds a character other than 0/1: '") +
                c + "'");
        }
    }
    return bits;
}

int run_contexts(uint32_t n, bool verify) {
    if (n < 2 || n % 2 != 0) {
        std::fprintf(stderr, "contexts requires even n >= 2\n");
        return kUsage;
    }
    const auto catalog = cqrac::all_contexts(n);
    std::printf("contexts: %zu\n", catalog.size());
    std::printf("size: %llu\n",
                static_cast<unsigned long long>((1ULL << (n - 1)) + 1));
    if (verify) {
        if (n > 4) {
            std::fprintf(stderr, "brute-force verification supports n <= 4\n");
            return kResource;
        }
        const auto cliques = cqrac::maximal_commuting_cliques(n);
        std::vector<std::vector<uint64_t>> a, b;
        for (const auto &c : catalog) a.push_back(c.members);
        b = cliques;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        if (a != b) {
            std::printf("brute-force check: FAILED\n");
            return kVerification;
        }
        std::printf("brute-force check: ok (%zu maximal cliques)\n", cliques.size());
    }
    return kOk;
}

int run_emit(const std::string &params_text, uint32_t n_flag,
             const std::string &measure_word) {
    cqrac::CircuitParams params;
    try {
        params = cqrac::CircuitParams::parse(params_text);
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "bad --params: %s\n", e.what());
        return kUsage;
    }
    if (n_flag != 0 && n_flag != params.n) {
        std::fprintf(stderr, "--n %u contradicts --params (n = %u)\n", n_flag, params.n);
        return kUsage;
    }
    std::fputs(cqrac::preparation_circuit(params).to_text().c_str(), stdout);
    if (!measure_word.empty()) {
        cqrac::PauliWord obs;
        try {
            obs = cqrac::PauliWord::from_string(measure_word);
        } catch (const std::exception &e) {
            std::fprintf(stderr, "bad --measure: %s\n", e.what());
            return kUsage;
        }
        if (obs.n != params.n) {
            std::fprintf(stderr, "--measure word must act on n = %u qubits\n", params.n);
            return kUsage;
        }
        std::fputs(cqrac::measurement_circuit(obs).to_text().c_str(), stdout);
    }
    return kOk;
}

int run_encode(int n, const std::string &data_path, int64_t pi4_bits,
               int tolerance, uint64_t seed, int64_t budget, int size_target,
               const std::string &manifest_path) {
    if (n < 2 || n % 2 != 0) {
        std::fprintf(stderr, "encode requires even n >= 2\n");
        return kUsage;
    }
    if (budget < 1) {
        std::fprintf(stderr, "--budget must be positive\n");
        return kUsage;
    }
    const auto expected =
        static_cast<size_t>((cqrac::word_count(static_cast<uint32_t>(n)) - 1) / 2);
    std::vector<uint8_t> data;
    if (!data_path.empty()) {
        data = parse_bits(read_file(data_path));
    } else {
        if (pi4_bits < 1) {
            std::fprintf(stderr, "--pi4-bits must be positive\n");
            return kUsage;
        }
        data = cqrac::pi_quarter_bits(static_cast<size_t>(pi4_bits));
    }
    if (data.size() != expected) {
        std::fprintf(stderr,
                     "data must hold exactly (3^%d - 1)/2 = %zu bits, got %zu\n",
                     n, expected, data.size());
        return kUsage;
    }

    cqrac::EncodeOptions options;
    options.seed = seed;
    options.stage1_iterations = budget;
    options.select.iterations = budget;
    options.select.tolerance_i = tolerance;
    options.select.size_target = size_target;

    const cqrac::StateSelection selection = cqrac::encode(data, n, options);
    const cqrac::CouplingScheme scheme = cqrac::CouplingScheme::standard(n);
    write_file(manifest_path,
               cqrac::manifest_json(selection, scheme, data, seed, budget));

    const auto &rep = selection.report;
    std::printf("states: %zu\n", selection.states.size());
    std::printf("matched: %d/%llu\n", rep.matched,
                static_cast<unsigned long long>(
                    cqrac::word_count(static_cast<uint32_t>(n)) - 1));
    std::printf("fe: %.9f\n", rep.fe);
    std::printf("T: %d\nnu: %.9f\nS: %lld\n", rep.T, rep.nu,
                static_cast<long long>(rep.S));
    std::printf("manifest: %s\n", manifest_path.c_str());

    if (selection.target.decode(scheme) != data) {
        std::fprintf(stderr, "target does not decode back to the data\n");
        return kVerification;
    }
    return kOk;
}

const char *status_name(cqrac::ParityStatus status) {
    switch (status) {
        case cqrac::ParityStatus::Resolved: return "resolved";
        case cqrac::ParityStatus::TieBroken: return "tie";
        case cqrac::ParityStatus::Unresolved: return "unresolved";
    }
    return "unknown";
}

nlohmann::ordered_json outcome_json(const std::string &observable,
                                    const cqrac::RetrievalOutcome &outcome) {
    nlohmann::ordered_json j;
    j["observable"] = observable;
    j["parity"] = static_cast<int>(outcome.parity);
    j["status"] = status_name(outcome.status);
    j["survivors"] = outcome.survivors;
    j["samples"] = outcome.samples_used;
    return j;
}

int run_retrieve(const std::string &manifest_path, const std::string &obs_text,
                 int64_t context_index, int64_t bit_index, int T,
                 uint64_t seed, const std::string &summary_path,
                 const std::string &transcript_path) {
    if (T < 1) {
        std::fprintf(stderr, "--T must be at least 1\n");
        return kUsage;
    }
    const cqrac::Manifest manifest = cqrac::parse_manifest(read_file(manifest_path));
    std::vector<cqrac::StabilizerState> states;
    states.reserve(manifest.states.size());
    for (const auto &params : manifest.states)
        states.push_back(cqrac::build_state(params));

    cqrac::Rng rng = cqrac::make_rng(seed);
    std::vector<cqrac::TranscriptRow> transcript;
    std::vector<cqrac::TranscriptRow> *transcript_ptr =
        transcript_path.empty() ? nullptr : &transcript;

    nlohmann::ordered_json summary;
    summary["n"] = manifest.n;
    summary["T"] = T;
    summary["seed"] = seed;
    summary["states"] = states.size();

    int64_t total_samples = 0;
    nlohmann::ordered_json parities = nlohmann::ordered_json::array();

    if (!obs_text.empty()) {
        const cqrac::PauliWord obs = cqrac::PauliWord::from_string(obs_text);
        if (static_cast<int>(obs.n) != manifest.n)
            throw std::invalid_argument("--observable length does not match the manifest");
        summary["query"] = {{"kind", "observable"}, {"value", obs_text}};
        const auto outcome =
            cqrac::retrieve_parity(states, obs, T, rng, transcript_ptr);
        parities.push_back(outcome_json(obs.str(), outcome));
        total_samples = outcome.samples_used;
        std::printf("%s: parity %+d (%s, %lld survivors)\n", obs.str().c_str(),
                    outcome.parity, status_name(outcome.status),
                    static_cast<long long>(outcome.survivors));
    } else if (context_index >= 0) {
        const auto catalog = cqrac::all_contexts(static_cast<uint32_t>(manifest.n));
        if (static_cast<size_t>(context_index) >= catalog.size())
            throw std::invalid_argument("--context index out of range");
        std::vector<cqrac::PauliWord> members;
        for (uint64_t w : catalog[static_cast<size_t>(context_index)].members)
            members.push_back(cqrac::PauliWord::from_index(
                static_cast<uint32_t>(manifest.n), w));
        summary["query"] = {{"kind", "context"}, {"value", context_index}};
        const auto outcomes =
            cqrac::retrieve_group(states, members, T, rng, transcript_ptr);
        for (size_t i = 0; i < outcomes.size(); ++i) {
            parities.push_back(outcome_json(members[i].str(), outcomes[i]));
            std::printf("%s: parity %+d (%s)\n", members[i].str().c_str(),
                        outcomes[i].parity, status_name(outcomes[i].status));
        }
        // Group members share one sample stream; count the copies once.
        total_samples = outcomes.empty() ? 0 : outcomes.front().samples_used;
    } else {
        if (bit_index < 0 ||
            static_cast<size_t>(bit_index) >= manifest.scheme.bit_count())
            throw std::invalid_argument("--bit index out of range");
        summary["query"] = {{"kind", "bit"}, {"value", bit_index}};
        const auto outcome = cqrac::retrieve_bit(
            manifest, static_cast<size_t>(bit_index), T, rng, transcript_ptr);
        const auto &couple = manifest.scheme.couples[static_cast<size_t>(bit_index)];
        const auto first = cqrac::PauliWord::from_index(
            static_cast<uint32_t>(manifest.n), couple[0]);
        const auto second = cqrac::PauliWord::from_index(
            static_cast<uint32_t>(manifest.n), couple[1]);
        parities.push_back(outcome_json(first.str(), outcome.first));
        parities.push_back(outcome_json(second.str(), outcome.second));
        if (first.commutes_with(second))
            total_samples = outcome.first.samples_used;
        else
            total_samples =
                outcome.first.samples_used + outcome.second.samples_used;
        summary["bit"] = outcome.bit;
        summary["resolved"] = outcome.resolved;
        std::printf("bit %lld: %d (%s)\n", static_cast<long long>(bit_index),
                    outcome.bit, outcome.resolved ? "resolved" : "unresolved");
        const uint8_t truth = manifest.data.at(static_cast<size_t>(bit_index));
        std::printf("stored bit: %d\n", static_cast<int>(truth));
    }

    summary["parities"] = parities;
    const auto ns = static_cast<double>(states.size());
    const double load = cqrac::observable_load(manifest.n, ns);
    summary["nu_estimate"] = cqrac::plan_from_T(ns, load, T).nu;
    summary["samples"] = total_samples;

    if (!summary_path.empty()) write_file(summary_path, summary.dump(2) + "\n");
    if (!transcript_path.empty())
        write_file(transcript_path, cqrac::transcript_csv(transcript));
    return kOk;
}

int run_analyze(bool curves, bool crossovers, bool table2, int apps_n,
                const std::string &out_path) {
    std::string artifact;
    if (curves) {
        artifact = cqrac::curves_csv(
            cqrac::tolerance_curves({8, 12, 16, 20}, 0.01, 0.45, 0.01));
    } else if (crossovers) {
        artifact = cqrac::crossovers_json(cqrac::crossover_report(0.999));
    } else if (table2) {
        artifact = cqrac::mub_table_csv();
    } else {
        artifact = cqrac::application_json(cqrac::application_report(apps_n, 0.999));
    }
    if (out_path.empty())
        std::fputs(artifact.c_str(), stdout);
    else
        write_file(out_path, artifact);
    return kOk;
}

int run_sweep(uint64_t samples, uint64_t seed, unsigned threads,
              const std::string &out_path) {
    if (samples < 10000)
        std::fprintf(stderr,
                     "warning: %llu samples rarely populate the rare "
                     "configurations; 10000+ recommended\n",
                     static_cast<unsigned long long>(samples));
    const cqrac::SweepResult result = cqrac::sweep_2q(samples, seed, threads);
    const std::string csv = cqrac::sweep_csv(result);
    if (out_path.empty())
        std::fputs(csv.c_str(), stdout);
    else
        write_file(out_path, csv);
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Contextual-redundancy random access code toolkit"};
    app.require_subcommand(1);

    auto *cmd_contexts = app.add_subcommand("contexts", "Count maximal commuting sets");
    uint32_t ctx_n = 0;
    bool ctx_verify = false;
    cmd_contexts->add_option("--n", ctx_n, "Number of qubits (even)")->required();
    cmd_contexts->add_flag("--verify-brute-force", ctx_verify,
                           "Cross-check against clique enumeration (n <= 4)");

    auto *cmd_emit = app.add_subcommand("emit-circuit", "Print preparation circuit text");
    std::string emit_params;
    uint32_t emit_n = 0;
    std::string emit_measure;
    cmd_emit->add_option("--params", emit_params, "Parameters '<alpha>,<beta>'")->required();
    cmd_emit->add_option("--n", emit_n, "Number of qubits (cross-checked)");
    cmd_emit->add_option("--measure", emit_measure, "Also print the readout circuit");

    auto *cmd_encode = app.add_subcommand("encode", "Select states for a data string");
    int enc_n = 0;
    std::string enc_data;
    int64_t enc_pi4 = 0;
    int enc_tolerance = 0;
    uint64_t enc_seed = 0;
    int64_t enc_budget = 20000;
    int enc_size_target = 0;
    std::string enc_manifest;
    cmd_encode->add_option("--n", enc_n, "Number of qubits (even)")->required();
    auto *opt_data = cmd_encode->add_option("--data", enc_data,
                                            "File of (3^n - 1)/2 bits");
    auto *opt_pi4 = cmd_encode->add_option("--pi4-bits", enc_pi4,
                                           "Encode the first M digits of pi/4");
    opt_data->excludes(opt_pi4);
    opt_pi4->excludes(opt_data);
    cmd_encode->add_option("--tolerance", enc_tolerance,
                           "Worst observables excluded from the search cost");
    cmd_encode->add_option("--seed", enc_seed, "Search seed");
    cmd_encode->add_option("--budget", enc_budget,
                           "Iteration budget for both search stages");
    cmd_encode->add_option("--size-target", enc_size_target,
                           "Fixed selection size (0 = free)");
    cmd_encode->add_option("--manifest", enc_manifest, "Output manifest path")
        ->required();

    auto *cmd_retrieve = app.add_subcommand("retrieve", "Query an encoded selection");
    std::string ret_manifest, ret_observable, ret_summary, ret_transcript;
    int64_t ret_context = -1, ret_bit = -1;
    int ret_T = 0;
    uint64_t ret_seed = 0;
    cmd_retrieve->add_option("--manifest", ret_manifest, "Manifest path")->required();
    auto *opt_obs = cmd_retrieve->add_option("--observable", ret_observable,
                                             "Letter string, e.g. ZX");
    auto *opt_ctx = cmd_retrieve->add_option("--context", ret_context,
                                             "Catalog index of a commuting family");
    auto *opt_bit = cmd_retrieve->add_option("--bit", ret_bit, "Data bit index");
    opt_obs->excludes(opt_ctx)->excludes(opt_bit);
    opt_ctx->excludes(opt_obs)->excludes(opt_bit);
    opt_bit->excludes(opt_obs)->excludes(opt_ctx);
    cmd_retrieve->add_option("--T", ret_T, "Filter steps")->required();
    cmd_retrieve->add_option("--seed", ret_seed, "Measurement seed");
    cmd_retrieve->add_option("--summary", ret_summary, "Summary JSON path");
    cmd_retrieve->add_option("--transcript", ret_transcript, "Transcript CSV path");

    auto *cmd_analyze = app.add_subcommand("analyze", "Asymptotic performance tables");
    bool ana_curves = false, ana_crossovers = false, ana_table2 = false;
    int ana_apps = 0;
    std::string ana_out;
    auto *opt_curves = cmd_analyze->add_flag("--curves", ana_curves,
                                             "Tolerance curves CSV");
    auto *opt_cross = cmd_analyze->add_flag("--crossovers", ana_crossovers,
                                            "Break-even widths JSON");
    auto *opt_table2 = cmd_analyze->add_flag("--table2", ana_table2,
                                             "Digit-code comparison CSV");
    auto *opt_apps = cmd_analyze->add_option("--apps", ana_apps,
                                             "Storage report JSON for width n");
    opt_curves->excludes(opt_cross)->excludes(opt_table2)->excludes(opt_apps);
    opt_cross->excludes(opt_curves)->excludes(opt_table2)->excludes(opt_apps);
    opt_table2->excludes(opt_curves)->excludes(opt_cross)->excludes(opt_apps);
    opt_apps->excludes(opt_curves)->excludes(opt_cross)->excludes(opt_table2);
    cmd_analyze->add_option("--out", ana_out, "Output path (default stdout)");

    auto *cmd_sweep = app.add_subcommand("sweep2q", "Random two-qubit state sweep");
    uint64_t swp_samples = 0, swp_seed = 0;
    unsigned swp_threads = 0;
    std::string swp_out;
    cmd_sweep->add_option("--samples", swp_samples, "Number of random states")
        ->required();
    cmd_sweep->add_option("--seed", swp_seed, "Stream seed");
    cmd_sweep->add_option("--threads", swp_threads, "Worker count (0 = auto)");
    cmd_sweep->add_option("--out", swp_out, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (cmd_contexts->parsed()) return run_contexts(ctx_n, ctx_verify);
        if (cmd_emit->parsed()) return run_emit(emit_params, emit_n, emit_measure);
        if (cmd_encode->parsed()) {
            if (opt_data->count() == 0 && opt_pi4->count() == 0) {
                std::fprintf(stderr, "encode needs --data or --pi4-bits\n");
                return kUsage;
            }
            return run_encode(enc_n, enc_data, enc_pi4, enc_tolerance, enc_seed,
                              enc_budget, enc_size_target, enc_manifest);
        }
        if (cmd_retrieve->parsed()) {
            if (opt_obs->count() + opt_ctx->count() + opt_bit->count() != 1) {
                std::fprintf(stderr,
                             "retrieve needs exactly one of --observable, "
                             "--context, --bit\n");
                return kUsage;
            }
            return run_retrieve(ret_manifest, ret_observable, ret_context,
                                ret_bit, ret_T, ret_seed, ret_summary,
                                ret_transcript);
        }
        if (cmd_analyze->parsed()) {
            const int modes = static_cast<int>(opt_curves->count() > 0) +
                              static_cast<int>(opt_cross->count() > 0) +
                              static_cast<int>(opt_table2->count() > 0) +
                              static_cast<int>(opt_apps->count() > 0);
            if (modes != 1) {
                std::fprintf(stderr,
                             "analyze needs exactly one of --curves, "
                             "--crossovers, --table2, --apps\n");
                return kUsage;
            }
            return run_analyze(ana_curves, ana_crossovers, ana_table2, ana_apps,
                               ana_out);
        }
        if (cmd_sweep->parsed())
            return run_sweep(swp_samples, swp_seed, swp_threads, swp_out);
    } catch (const std::bad_alloc &) {
        std::fprintf(stderr, "out of memory\n");
        return kResource;
    } catch (const std::length_error &e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return kResource;
    } catch (const IoError &e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kIo;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kUsage;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kVerification;
    }
    return kUsage;
}
