// ptkit - model a system of autonomous agents as declared promises, check
// the structure of the declarations, and simulate trust-driven sampling.
//
// Commands:
//   check      run the static analysis battery over a model document
//   simulate   run the discrete-time channel simulation
//   proxy      generate and audit assured-delivery proxy chains
//   translate  translate a body between agent vocabularies
//   converge   verify fixed-point behaviour of a declared operator
//
// Exit codes: 0 clean, 1 error findings, 2 usage or IO errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ptkit/errors.hpp"
#include "ptkit/model.hpp"
#include "ptkit/report.hpp"

namespace {

using namespace ptkit;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail("ParseError", out_path + ": cannot open for writing");
    out << text;
}

std::string render(const Report& report, const std::string& format) {
    return format == "json" ? report.to_json() : report.to_text();
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        fail("ParseError", "range must look like A..B, got '" + text + "'");
    try {
        const std::size_t lo = std::stoull(text.substr(0, dots));
        const std::size_t hi = std::stoull(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        fail("ParseError", "range must look like A..B, got '" + text + "'");
    }
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::string word;
    for (char c : text) {
        if (c == ' ' || c == ',') {
            if (!word.empty()) out.push_back(std::move(word));
            word.clear();
        } else {
            word += c;
        }
    }
    if (!word.empty()) out.push_back(std::move(word));
    return out;
}

int run_check(const std::string& model_path, const std::string& format,
              const std::string& out_path) {
    const ModelDocument doc = load_model(model_path);
    const Report report = check_model(doc);
    write_output(render(report, format), out_path);
    return report.has_errors() ? 1 : 0;
}

int run_simulate(const std::string& model_path, std::uint64_t horizon, std::uint64_t seed,
                 const std::string& mode, const std::string& format,
                 const std::string& out_path, const std::string& log_path) {
    const ModelDocument doc = load_model(model_path);
    const SimMode sim_mode = mode == "stoch" ? SimMode::Stochastic : SimMode::Deterministic;
    const SimulationResult result = simulate_model(doc, horizon, seed, sim_mode);
    if (!log_path.empty()) {
        std::ofstream log(log_path, std::ios::binary);
        if (!log) fail("ParseError", log_path + ": cannot open for writing");
        log << result.log.to_tsv();
    }
    write_output(render(result.report, format), out_path);
    return result.report.has_errors() ? 1 : 0;
}

int run_proxy(std::optional<std::size_t> n, const std::string& range, bool direct_trust,
              bool minimal_trust, const std::string& format, const std::string& out_path) {
    if (!n && range.empty())
        fail("ParseError", "proxy needs --n or --range");
    int status = 0;
    if (n) {
        const ModelDocument doc = chain_model({*n, direct_trust}, minimal_trust);
        write_output(emit_model(doc), out_path);
        if (!out_path.empty()) {
            Report report = audit_chain(doc, doc.chains.front());
            if (!range.empty()) {
                const auto [lo, hi] = parse_range(range);
                const Report growth = proxy_range_report(lo, hi, direct_trust);
                report.metrics.insert(growth.metrics.begin(), growth.metrics.end());
                for (const auto& [k, v] : growth.verdicts) report.verdicts[k] = v;
            }
            std::cout << render(report, format);
            status = report.has_errors() ? 1 : 0;
        }
        return status;
    }
    const auto [lo, hi] = parse_range(range);
    const Report report = proxy_range_report(lo, hi, direct_trust);
    write_output(render(report, format), out_path);
    return report.has_errors() ? 1 : 0;
}

int run_translate(const std::string& model_path, const std::string& from, const std::string& to,
                  const std::string& body, const std::string& format,
                  const std::string& out_path) {
    const ModelDocument doc = load_model(model_path);
    const Vocabulary* src = doc.find_vocabulary(from);
    const Vocabulary* dst = doc.find_vocabulary(to);
    if (!src) fail("UnresolvedReference", "unknown vocabulary '" + from + "'");
    if (!dst) fail("UnresolvedReference", "unknown vocabulary '" + to + "'");
    const TranslationMatrix* matrix = doc.find_matrix(from, to);
    if (!matrix)
        fail("MissingTranslation", "no matrix from '" + from + "' to '" + to +
                                       "' is declared; translation requires an explicit matrix");

    BodyVector vec;
    vec.vocab = from;
    vec.coeffs.assign(src->dimension(), 0);
    for (const auto& word : split_words(body)) {
        const auto it = std::find(src->symbols.begin(), src->symbols.end(), word);
        if (it == src->symbols.end())
            fail("VocabMismatch", "word '" + word + "' is not in vocabulary '" + from + "'");
        ++vec.coeffs[static_cast<std::size_t>(it - src->symbols.begin())];
    }
    const BodyVector result = translate(vec, *matrix);
    const Classification cls = classify(*matrix);

    Report report;
    report.title = "translate " + from + " -> " + to;
    for (std::size_t i = 0; i < src->dimension(); ++i)
        if (vec.coeffs[i] != 0)
            report.metrics["in " + src->symbols[i]] = static_cast<double>(vec.coeffs[i]);
    for (std::size_t i = 0; i < dst->dimension(); ++i)
        if (result.coeffs[i] != 0)
            report.metrics["out " + dst->symbols[i]] = static_cast<double>(result.coeffs[i]);
    report.metrics["matrix_rank"] = static_cast<double>(cls.rank);
    report.add({"MatrixClassification", Severity::Info, {},
                "matrix " + from + "->" + to + " is " + matrix_class_name(cls.cls) + " (rank " +
                    std::to_string(cls.rank) + ")"});
    write_output(render(report, format), out_path);
    return 0;
}

int run_converge(const std::string& model_path, const std::string& name,
                 std::optional<std::size_t> max_iter, const std::string& format,
                 const std::string& out_path) {
    const ModelDocument doc = load_model(model_path);
    const Operator* op = doc.find_operator(name);
    if (!op) fail("UnresolvedReference", "unknown operator '" + name + "'");

    const bool idem = is_idempotent(*op);
    const auto conv = is_convergent(*op, max_iter.value_or(op->space.size()));
    const auto fixed = fixed_points(*op);

    Report report;
    report.title = "converge " + name;
    report.verdicts["idempotent"] = idem;
    report.verdicts["convergent"] = conv.convergent;
    report.metrics["states"] = static_cast<double>(op->space.size());
    report.metrics["fixed_points"] = static_cast<double>(fixed.size());
    std::size_t longest = 0;
    for (const auto& len : conv.orbit_lengths)
        if (len) longest = std::max(longest, *len);
    report.metrics["longest_orbit"] = static_cast<double>(longest);
    std::string labels;
    for (std::size_t q : fixed) {
        if (!labels.empty()) labels += ", ";
        labels += op->space.states[q];
    }
    report.add({"FixedPoints", Severity::Info, {},
                fixed.empty() ? "operator has no fixed point; orbits cannot settle"
                              : "fixed points: " + labels});
    write_output(render(report, format), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"promise-model analysis and simulation toolkit"};
    app.require_subcommand(1);

    std::string model_path, format = "text", out_path, log_path, range, body;
    std::string from_vocab, to_vocab, op_name, mode = "det";
    std::uint64_t horizon = 100, seed = 0;
    std::optional<std::size_t> n_proxies, max_iter;
    bool direct_trust = false, minimal_trust = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "write the output to a file");
    };

    auto* check = app.add_subcommand("check", "static analysis of a model document");
    check->add_option("model", model_path, "model document")->required();
    add_common(check);

    auto* simulate = app.add_subcommand("simulate", "discrete-time channel simulation");
    simulate->add_option("model", model_path, "model document")->required();
    simulate->add_option("--horizon", horizon, "ticks to simulate");
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--mode", mode, "delivery mode")
        ->check(CLI::IsMember({"det", "stoch"}));
    simulate->add_option("--log", log_path, "write the event log (TSV) to a file");
    add_common(simulate);

    auto* proxy = app.add_subcommand("proxy", "generate and audit proxy chains");
    proxy->add_option("--n", n_proxies, "number of intermediaries");
    proxy->add_option("--range", range, "cost growth over doubling N, e.g. 4..64");
    proxy->add_flag("--direct-trust", direct_trust, "add proxy->server promises");
    proxy->add_flag("--minimal-trust", minimal_trust, "audit the complete-graph requirement");
    add_common(proxy);

    auto* translate = app.add_subcommand("translate", "translate a body between vocabularies");
    translate->add_option("model", model_path, "model document")->required();
    translate->add_option("--from", from_vocab, "source vocabulary")->required();
    translate->add_option("--to", to_vocab, "target vocabulary")->required();
    translate->add_option("--body", body, "words, space or comma separated")->required();
    add_common(translate);

    auto* converge = app.add_subcommand("converge", "verify operator fixed points");
    converge->add_option("model", model_path, "model document")->required();
    converge->add_option("--operator", op_name, "operator name")->required();
    converge->add_option("--max-iter", max_iter, "orbit step limit (default: state count)");
    add_common(converge);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return run_check(model_path, format, out_path);
        if (simulate->parsed())
            return run_simulate(model_path, horizon, seed, mode, format, out_path, log_path);
        if (proxy->parsed())
            return run_proxy(n_proxies, range, direct_trust, minimal_trust, format, out_path);
        if (translate->parsed())
            return run_translate(model_path, from_vocab, to_vocab, body, format, out_path);
        if (converge->parsed())
            return run_converge(model_path, op_name, max_iter, format, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
