#include "ptkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "ptkit/errors.hpp"
#include "ptkit/language.hpp"

namespace ptkit {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_number(double x) {
    if (x == static_cast<double>(static_cast<long long>(x)) && std::abs(x) < 1e15)
        return std::to_string(static_cast<long long>(x));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

} // namespace

bool Report::has_errors() const {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

void Report::add(Finding f) { findings.push_back(std::move(f)); }

std::string Report::to_text() const {
    std::ostringstream out;
    out << "# " << title << "\n";
    if (!verdicts.empty()) {
        out << "\nverdicts:\n";
        for (const auto& [name, pass] : verdicts)
            out << "  " << name << ": " << (pass ? "pass" : "fail") << "\n";
    }
    if (!metrics.empty()) {
        out << "\nmetrics:\n";
        for (const auto& [name, value] : metrics)
            out << "  " << name << ": " << format_number(value) << "\n";
    }
    out << "\nfindings (" << findings.size() << "):\n";
    for (const Finding& f : findings) {
        out << "  [" << severity_name(f.severity) << "] " << f.code;
        if (!f.promises.empty()) {
            out << " promises=[";
            for (std::size_t i = 0; i < f.promises.size(); ++i)
                out << (i ? ", " : "") << f.promises[i];
            out << "]";
        }
        out << ": " << f.message << "\n";
    }
    return out.str();
}

std::string Report::to_json() const {
    ojson j;
    j["title"] = title;
    j["verdicts"] = ojson::object();
    for (const auto& [name, pass] : verdicts) j["verdicts"][name] = pass;
    j["metrics"] = ojson::object();
    for (const auto& [name, value] : metrics) j["metrics"][name] = value;
    j["findings"] = ojson::array();
    for (const Finding& f : findings) {
        ojson obj;
        obj["code"] = f.code;
        obj["severity"] = severity_name(f.severity);
        obj["promises"] = f.promises;
        obj["message"] = f.message;
        j["findings"].push_back(obj);
    }
    return j.dump(2) + "\n";
}

Report check_model(const ModelDocument& doc) {
    Report report;
    report.title = "check";
    const PromiseGraph& graph = doc.graph;

    // Re-add every promise through the guarded constructor; violations of
    // the autonomy tenet surface here as findings, not load failures.
    {
        PromiseGraph rebuilt = make_graph(graph.agents);
        for (std::size_t i = 0; i < graph.promises.size(); ++i) {
            try {
                rebuilt = add_promise(std::move(rebuilt), graph.promises[i]);
            } catch (const Error& e) {
                report.add({e.code(), Severity::Error, {i}, e.what()});
                rebuilt.promises.push_back(graph.promises[i]);  // keep indices aligned
            }
        }
    }
    const bool autonomy_ok = report.findings.empty();

    const auto bindings = bind(graph);
    std::size_t inert = 0;
    for (const Binding& b : bindings) {
        if (!b.inert) continue;
        ++inert;
        report.add({"InertBinding", Severity::Warn, {b.offer, b.accept},
                    "offer and acceptance bodies do not overlap; no influence propagates"});
    }
    for (std::size_t i = 0; i < graph.promises.size(); ++i) {
        if (!graph.promises[i].is_accept()) continue;
        const bool matched = std::any_of(bindings.begin(), bindings.end(),
                                         [&](const Binding& b) { return b.accept == i; });
        if (!matched)
            report.add({"DanglingAcceptance", Severity::Info, {i},
                        "acceptance by '" + graph.promises[i].promiser +
                            "' matches no offer; ready but unused"});
    }
    report.metrics["agents"] = static_cast<double>(graph.agents.size());
    report.metrics["promises"] = static_cast<double>(graph.promises.size());
    report.metrics["bindings"] = static_cast<double>(bindings.size());
    report.metrics["inert_bindings"] = static_cast<double>(inert);

    auto conditional_findings = resolve_conditionals(graph);
    const bool conditionals_ok =
        std::none_of(conditional_findings.begin(), conditional_findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
    for (auto& f : conditional_findings) report.add(std::move(f));

    auto imposition_findings = detect_impositions(graph);
    const bool impositions_ok =
        std::none_of(imposition_findings.begin(), imposition_findings.end(),
                     [](const Finding& f) { return f.code == "ImpositionUnilateral"; });
    for (auto& f : imposition_findings) report.add(std::move(f));

    for (const auto& m : doc.matrices) {
        const auto cls = classify(m);
        report.metrics["matrix_rank " + m.from_vocab + "->" + m.to_vocab] =
            static_cast<double>(cls.rank);
        report.add({"MatrixClassification", Severity::Info, {},
                    "matrix " + m.from_vocab + "->" + m.to_vocab + " is " +
                        matrix_class_name(cls.cls) + " (rank " + std::to_string(cls.rank) + ")"});
    }

    auto continuity_findings = verify_continuity(graph);
    const bool continuity_ok = continuity_findings.empty();
    for (auto& f : continuity_findings) report.add(std::move(f));

    auto loop_findings = detect_bootstrap_deadlock(graph);
    const bool no_deadlock =
        std::none_of(loop_findings.begin(), loop_findings.end(),
                     [](const Finding& f) { return f.code == "BootstrapDeadlock"; });
    for (auto& f : loop_findings) report.add(std::move(f));

    for (std::size_t i = 0; i < graph.promises.size(); ++i) {
        const Promise& p = graph.promises[i];
        if (!p.is_offer() || effective_conditions(p).empty()) continue;
        const auto frag = fragility(graph, i);
        if (frag.fragile) {
            report.add({"FragileAggregation", Severity::Warn, {i},
                        "conditional offer by '" + p.promiser + "' to '" + p.promisee +
                            "' has " + std::to_string(frag.single_points) +
                            " single-point input(s); intermediary '" + p.promiser +
                            "' is the chief suspect when transmission fails"});
        } else {
            report.add({"RedundantAggregation", Severity::Info, {i},
                        "conditional offer by '" + p.promiser +
                            "' aggregates redundant inputs only"});
        }
    }

    bool chains_ok = true;
    for (std::size_t c = 0; c < doc.chains.size(); ++c) {
        const auto& entry = doc.chains[c];
        auto diff = completeness_against_pattern(graph, entry.spec, entry.minimal_trust);
        for (const Finding& f : diff)
            if (f.severity != Severity::Info) chains_ok = false;
        for (auto& f : diff) report.add(std::move(f));
        report.metrics["chain_lines"] = static_cast<double>(chain_lines(graph));
        report.metrics["chain_cost"] = static_cast<double>(chain_cost(graph));
    }

    report.verdicts["autonomy"] = autonomy_ok;
    report.verdicts["conditionals_wired"] = conditionals_ok;
    report.verdicts["impositions_absorbed"] = impositions_ok;
    report.verdicts["continuity"] = continuity_ok;
    report.verdicts["no_deadlock"] = no_deadlock;
    if (!doc.chains.empty()) report.verdicts["chain_pattern"] = chains_ok;

    sort_findings(report.findings);
    return report;
}

SimulationResult simulate_model(const ModelDocument& doc,
                                std::uint64_t horizon,
                                std::uint64_t seed,
                                SimMode mode) {
    if (doc.channels.empty())
        fail("NoChannels", "the model declares no channels to simulate");

    std::map<AgentId, TrustConfig> configs;
    for (const auto& agent : doc.graph.agents) configs[agent] = doc.trust_for(agent);

    SimConfig cfg;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.mode = mode;

    SimulationResult result;
    result.log = run(doc.graph, TrustState{}, configs, doc.channels, cfg);

    Report& report = result.report;
    report.title = "simulate";
    report.metrics["horizon"] = static_cast<double>(horizon);
    report.metrics["seed"] = static_cast<double>(seed);
    report.metrics["channels"] = static_cast<double>(doc.channels.size());

    double total_work = 0.0;
    std::size_t total_missed = 0;
    for (std::size_t ci = 0; ci < doc.channels.size(); ++ci) {
        const std::string tag = "ch" + std::to_string(ci) + " ";
        const ChannelSummary& sum = result.log.summaries[ci];
        report.metrics[tag + "emitted"] =
            static_cast<double>(result.log.count(EventType::Emitted, ci));
        report.metrics[tag + "sampled"] =
            static_cast<double>(result.log.count(EventType::Sampled, ci));
        report.metrics[tag + "delivered"] =
            static_cast<double>(result.log.count(EventType::Delivered, ci));
        const std::size_t missed = result.log.count(EventType::Missed, ci);
        report.metrics[tag + "missed"] = static_cast<double>(missed);
        report.metrics[tag + "kept"] = static_cast<double>(result.log.count(EventType::Kept, ci));
        report.metrics[tag + "broken"] =
            static_cast<double>(result.log.count(EventType::Broken, ci));
        report.metrics[tag + "final_V"] = sum.final_potential;
        report.metrics[tag + "final_v"] = sum.final_rate;
        report.metrics[tag + "kinetic_cost"] = sum.kinetic_work;
        total_work += sum.kinetic_work;
        total_missed += missed;
        try {
            report.metrics[tag + "entropy_bits"] = spectrum_entropy(observed_spectrum(result.log, ci));
        } catch (const Error&) {
            // no delivered outcomes on this channel
        }
    }
    report.metrics["total_kinetic_cost"] = total_work;
    report.metrics["total_missed"] = static_cast<double>(total_missed);
    return result;
}

Report audit_chain(const ModelDocument& doc, const ChainSpecEntry& entry) {
    Report report;
    report.title = "proxy";
    const std::size_t n = entry.spec.n_proxies;
    const std::size_t lines = chain_lines(doc.graph);
    report.metrics["n_proxies"] = static_cast<double>(n);
    report.metrics["lines"] = static_cast<double>(lines);
    report.metrics["cost"] = static_cast<double>(chain_cost(doc.graph));
    const std::size_t expected_lines =
        3 * n + 1 + (entry.spec.with_direct_trust ? n : 0);
    report.verdicts["line_count"] = lines == expected_lines;

    auto continuity_findings = verify_continuity(doc.graph);
    report.verdicts["continuity"] = continuity_findings.empty();
    for (auto& f : continuity_findings) report.add(std::move(f));

    auto diff = completeness_against_pattern(doc.graph, entry.spec, entry.minimal_trust);
    report.verdicts["pattern_complete"] =
        std::none_of(diff.begin(), diff.end(),
                     [](const Finding& f) { return f.severity != Severity::Info; });
    for (auto& f : diff) report.add(std::move(f));

    sort_findings(report.findings);
    return report;
}

Report proxy_range_report(std::size_t lo, std::size_t hi, bool with_direct_trust) {
    if (lo < 1 || hi < lo) fail("ParseError", "range must satisfy 1 <= lo <= hi");
    Report report;
    report.title = "proxy growth";
    std::vector<std::pair<double, double>> points;
    for (std::size_t n = lo; n <= hi; n *= 2) {
        ChainSpec spec{n, with_direct_trust};
        const auto graph = gen_proxy_chain(spec);
        const auto cost = chain_cost(graph);
        report.metrics["cost n=" + std::to_string(n)] = static_cast<double>(cost);
        report.metrics["lines n=" + std::to_string(n)] =
            static_cast<double>(chain_lines(graph));
        points.emplace_back(static_cast<double>(n), static_cast<double>(cost));
    }
    const double exponent = fit_growth_exponent(points);
    report.metrics["growth_exponent"] = exponent;
    report.verdicts["growth_quadratic"] = std::abs(exponent - 2.0) <= 0.15;
    return report;
}

} // namespace ptkit
