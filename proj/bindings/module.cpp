// Python bindings for the ptkit core. Exposes the model types and the main
// operations: graph analysis, language translation, trust kinetics, channel
// simulation, proxy-chain generation and audit, and operator verification.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptkit/composition.hpp"
#include "ptkit/convergence.hpp"
#include "ptkit/dynamics.hpp"
#include "ptkit/errors.hpp"
#include "ptkit/language.hpp"
#include "ptkit/model.hpp"
#include "ptkit/promise.hpp"
#include "ptkit/report.hpp"
#include "ptkit/trust.hpp"

namespace py = pybind11;
using namespace ptkit;

PYBIND11_MODULE(ptkit, m) {
    m.doc() = "promise-model analysis and simulation toolkit";

    py::register_exception<Error>(m, "PtkitError");

    // ── promise graph ──
    py::enum_<Polarity>(m, "Polarity")
        .value("Offer", Polarity::Offer)
        .value("Accept", Polarity::Accept);
    py::enum_<PromiseKind>(m, "PromiseKind")
        .value("Promise", PromiseKind::Promise)
        .value("Imposition", PromiseKind::Imposition);
    py::enum_<Continuity>(m, "Continuity")
        .value("OneShot", Continuity::OneShot)
        .value("Continuous", Continuity::Continuous);
    py::enum_<Severity>(m, "Severity")
        .value("Error", Severity::Error)
        .value("Warn", Severity::Warn)
        .value("Info", Severity::Info);

    py::class_<Body>(m, "Body")
        .def(py::init<>())
        .def(py::init([](std::set<std::string> words, std::map<std::string, double> attrs) {
                 return Body{std::move(words), std::move(attrs)};
             }),
             py::arg("words"), py::arg("attrs") = std::map<std::string, double>{})
        .def_readwrite("words", &Body::words)
        .def_readwrite("attrs", &Body::attrs)
        .def("covers", &Body::covers)
        .def("intersect", &Body::intersect)
        .def(py::self == py::self);

    py::class_<Promise>(m, "Promise")
        .def(py::init<>())
        .def(py::init([](AgentId promiser, AgentId promisee, Polarity polarity, Body body,
                         std::vector<Body> conditions, PromiseKind kind, Continuity continuity,
                         std::vector<AgentId> referenced_agents, double keep_prob) {
                 return Promise{std::move(promiser), std::move(promisee), polarity,
                                std::move(body), std::move(conditions), kind, continuity,
                                std::move(referenced_agents), keep_prob};
             }),
             py::arg("promiser"), py::arg("promisee"), py::arg("polarity"), py::arg("body"),
             py::arg("conditions") = std::vector<Body>{},
             py::arg("kind") = PromiseKind::Promise,
             py::arg("continuity") = Continuity::Continuous,
             py::arg("referenced_agents") = std::vector<AgentId>{},
             py::arg("keep_prob") = 1.0)
        .def_readwrite("promiser", &Promise::promiser)
        .def_readwrite("promisee", &Promise::promisee)
        .def_readwrite("polarity", &Promise::polarity)
        .def_readwrite("body", &Promise::body)
        .def_readwrite("conditions", &Promise::conditions)
        .def_readwrite("kind", &Promise::kind)
        .def_readwrite("continuity", &Promise::continuity)
        .def_readwrite("referenced_agents", &Promise::referenced_agents)
        .def_readwrite("keep_prob", &Promise::keep_prob)
        .def(py::self == py::self);

    py::class_<PromiseGraph>(m, "PromiseGraph")
        .def(py::init<>())
        .def_readwrite("agents", &PromiseGraph::agents)
        .def_readwrite("promises", &PromiseGraph::promises)
        .def("has_agent", &PromiseGraph::has_agent)
        .def(py::self == py::self);

    py::class_<Binding>(m, "Binding")
        .def_readonly("offer", &Binding::offer)
        .def_readonly("accept", &Binding::accept)
        .def_readonly("overlap", &Binding::overlap)
        .def_readonly("inert", &Binding::inert);

    py::class_<Finding>(m, "Finding")
        .def_readonly("code", &Finding::code)
        .def_readonly("severity", &Finding::severity)
        .def_readonly("promises", &Finding::promises)
        .def_readonly("message", &Finding::message)
        .def("__repr__", [](const Finding& f) {
            return "<Finding " + f.code + " [" + severity_name(f.severity) + "]>";
        });

    m.def("make_graph", &make_graph, py::arg("agents"));
    m.def("add_promise", &add_promise, py::arg("graph"), py::arg("promise"));
    m.def("bind", &ptkit::bind, py::arg("graph"));
    m.def("resolve_conditionals", &resolve_conditionals, py::arg("graph"));
    m.def("detect_impositions", &detect_impositions, py::arg("graph"));

    // ── language ──
    py::class_<Vocabulary>(m, "Vocabulary")
        .def(py::init([](std::string id, std::vector<std::string> symbols) {
                 return Vocabulary{std::move(id), std::move(symbols)};
             }),
             py::arg("id"), py::arg("symbols"))
        .def_readwrite("id", &Vocabulary::id)
        .def_readwrite("symbols", &Vocabulary::symbols)
        .def_property_readonly("dimension", &Vocabulary::dimension);

    py::class_<BodyVector>(m, "BodyVector")
        .def(py::init([](std::string vocab, std::vector<std::int64_t> coeffs) {
                 return BodyVector{std::move(vocab), std::move(coeffs)};
             }),
             py::arg("vocab"), py::arg("coeffs"))
        .def_readwrite("vocab", &BodyVector::vocab)
        .def_readwrite("coeffs", &BodyVector::coeffs)
        .def(py::self == py::self);

    py::class_<TranslationMatrix>(m, "TranslationMatrix")
        .def(py::init([](std::string from_vocab, std::string to_vocab,
                         std::vector<std::vector<std::int64_t>> entries) {
                 return TranslationMatrix{std::move(from_vocab), std::move(to_vocab),
                                          std::move(entries)};
             }),
             py::arg("from_vocab"), py::arg("to_vocab"), py::arg("entries"))
        .def_readwrite("from_vocab", &TranslationMatrix::from_vocab)
        .def_readwrite("to_vocab", &TranslationMatrix::to_vocab)
        .def_readwrite("entries", &TranslationMatrix::entries);

    py::enum_<MatrixClass>(m, "MatrixClass")
        .value("Bijective", MatrixClass::Bijective)
        .value("OneWay", MatrixClass::OneWay)
        .value("Lossy", MatrixClass::Lossy);

    py::class_<Classification>(m, "Classification")
        .def_readonly("cls", &Classification::cls)
        .def_readonly("rank", &Classification::rank);

    m.def("translate", &ptkit::translate, py::arg("vector"), py::arg("matrix"));
    m.def("classify", &classify, py::arg("matrix"));
    m.def("unitarity_check", &unitarity_check, py::arg("forth"), py::arg("back"));
    m.def("colanguage", &colanguage, py::arg("a"), py::arg("b"));

    // ── trust ──
    py::enum_<Outcome>(m, "Outcome")
        .value("Kept", Outcome::Kept)
        .value("Broken", Outcome::Broken);

    py::class_<AssessmentRecord>(m, "AssessmentRecord")
        .def(py::init([](AgentId observer, std::size_t promise, Outcome outcome,
                         std::uint64_t tick) {
                 return AssessmentRecord{std::move(observer), promise, outcome, tick};
             }),
             py::arg("observer"), py::arg("promise"), py::arg("outcome"), py::arg("tick") = 0)
        .def_readwrite("observer", &AssessmentRecord::observer)
        .def_readwrite("promise", &AssessmentRecord::promise)
        .def_readwrite("outcome", &AssessmentRecord::outcome)
        .def_readwrite("tick", &AssessmentRecord::tick);

    py::class_<TrustState>(m, "TrustState")
        .def(py::init<>())
        .def_readwrite("potentials", &TrustState::potentials)
        .def("get", &TrustState::get, py::arg("observer"), py::arg("promise"));

    py::class_<RiskPolicy>(m, "RiskPolicy")
        .def(py::init([](double rho, double risk) { return RiskPolicy{rho, risk}; }),
             py::arg("rho") = 1.0, py::arg("risk") = 0.0)
        .def_readwrite("rho", &RiskPolicy::rho)
        .def_readwrite("risk", &RiskPolicy::risk);

    m.def("assess", &ptkit::assess, py::arg("state"), py::arg("record"), py::arg("lambda_"));
    m.def("sampling_rate", &sampling_rate, py::arg("v_r"), py::arg("v_s"), py::arg("policy"));
    m.def("kinetic_cost", &kinetic_cost, py::arg("v"), py::arg("policy"));

    // ── dynamics ──
    py::enum_<SimMode>(m, "SimMode")
        .value("Deterministic", SimMode::Deterministic)
        .value("Stochastic", SimMode::Stochastic);
    py::enum_<EventType>(m, "EventType")
        .value("Emitted", EventType::Emitted)
        .value("Sampled", EventType::Sampled)
        .value("Delivered", EventType::Delivered)
        .value("Missed", EventType::Missed)
        .value("Kept", EventType::Kept)
        .value("Broken", EventType::Broken);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::uint64_t horizon, std::uint64_t seed, SimMode mode) {
                 return SimConfig{horizon, seed, mode};
             }),
             py::arg("horizon") = 1, py::arg("seed") = 0,
             py::arg("mode") = SimMode::Deterministic)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("mode", &SimConfig::mode);

    py::class_<ChannelSpec>(m, "ChannelSpec")
        .def(py::init([](std::size_t offer, std::size_t accept, double bandwidth,
                         std::optional<double> fixed_rate) {
                 return ChannelSpec{offer, accept, bandwidth, fixed_rate};
             }),
             py::arg("offer"), py::arg("accept"), py::arg("bandwidth") = 1.0,
             py::arg("fixed_rate") = std::nullopt)
        .def_readwrite("offer", &ChannelSpec::offer)
        .def_readwrite("accept", &ChannelSpec::accept)
        .def_readwrite("bandwidth", &ChannelSpec::bandwidth)
        .def_readwrite("fixed_rate", &ChannelSpec::fixed_rate);

    py::class_<Fidelity>(m, "Fidelity")
        .def_readonly("faithful", &Fidelity::faithful)
        .def_readonly("p_miss", &Fidelity::p_miss);

    py::class_<Event>(m, "Event")
        .def_readonly("tick", &Event::tick)
        .def_readonly("channel", &Event::channel)
        .def_readonly("type", &Event::type)
        .def_readonly("potential", &Event::potential)
        .def_readonly("rate", &Event::rate);

    py::class_<ChannelSummary>(m, "ChannelSummary")
        .def_readonly("kinetic_work", &ChannelSummary::kinetic_work)
        .def_readonly("final_potential", &ChannelSummary::final_potential)
        .def_readonly("final_rate", &ChannelSummary::final_rate);

    py::class_<EventLog>(m, "EventLog")
        .def_readonly("events", &EventLog::events)
        .def_readonly("channels", &EventLog::channels)
        .def_readonly("summaries", &EventLog::summaries)
        .def("count", py::overload_cast<EventType>(&EventLog::count, py::const_))
        .def("count", py::overload_cast<EventType, std::size_t>(&EventLog::count, py::const_))
        .def("to_tsv", &EventLog::to_tsv);

    py::class_<TrustConfig>(m, "TrustConfig")
        .def(py::init([](RiskPolicy policy, double lambda, double v_r) {
                 return TrustConfig{policy, lambda, v_r};
             }),
             py::arg("policy") = RiskPolicy{}, py::arg("lambda_") = 0.5, py::arg("v_r") = 1.0)
        .def_readwrite("policy", &TrustConfig::policy)
        .def_readwrite("lambda_", &TrustConfig::lambda)
        .def_readwrite("v_r", &TrustConfig::v_r);

    py::class_<OutcomeSpectrum>(m, "OutcomeSpectrum")
        .def(py::init([](std::vector<std::string> outcomes, std::vector<double> p) {
                 return OutcomeSpectrum{std::move(outcomes), std::move(p)};
             }),
             py::arg("outcomes"), py::arg("p"))
        .def_readwrite("outcomes", &OutcomeSpectrum::outcomes)
        .def_readwrite("p", &OutcomeSpectrum::p);

    m.def("nyquist_fidelity", &nyquist_fidelity, py::arg("bandwidth"), py::arg("sampling"));
    m.def("run", &ptkit::run, py::arg("graph"), py::arg("trust"), py::arg("configs"),
          py::arg("channels"), py::arg("config"));
    m.def("spectrum_entropy", &spectrum_entropy, py::arg("spectrum"));
    m.def("observed_spectrum", &observed_spectrum, py::arg("log"), py::arg("channel"));

    // ── composition ──
    py::class_<ChainSpec>(m, "ChainSpec")
        .def(py::init([](std::size_t n_proxies, bool with_direct_trust) {
                 return ChainSpec{n_proxies, with_direct_trust};
             }),
             py::arg("n_proxies") = 0, py::arg("with_direct_trust") = false)
        .def_readwrite("n_proxies", &ChainSpec::n_proxies)
        .def_readwrite("with_direct_trust", &ChainSpec::with_direct_trust);

    py::class_<BodyExpr>(m, "BodyExpr")
        .def_static("parse", &BodyExpr::parse, py::arg("text"))
        .def("str", &BodyExpr::str)
        .def("size", &BodyExpr::size)
        .def("symbols", &BodyExpr::symbols)
        .def("implied_conditions", &BodyExpr::implied_conditions);

    py::class_<FragilityGroup>(m, "FragilityGroup")
        .def_readonly("group", &FragilityGroup::group)
        .def_readonly("providers", &FragilityGroup::providers);

    py::class_<FragilityReport>(m, "FragilityReport")
        .def_readonly("dependent", &FragilityReport::dependent)
        .def_readonly("fragile", &FragilityReport::fragile)
        .def_readonly("single_points", &FragilityReport::single_points)
        .def_readonly("groups", &FragilityReport::groups);

    m.def("gen_proxy_chain", &gen_proxy_chain, py::arg("spec"));
    m.def("chain_lines", &chain_lines, py::arg("graph"));
    m.def("chain_cost", &chain_cost, py::arg("graph"));
    m.def("verify_continuity", &verify_continuity, py::arg("graph"));
    m.def("detect_bootstrap_deadlock", &detect_bootstrap_deadlock, py::arg("graph"));
    m.def("fragility", &fragility, py::arg("graph"), py::arg("dependent"),
          py::arg("redundancy") = std::map<std::size_t, std::string>{});
    m.def("completeness_against_pattern", &completeness_against_pattern, py::arg("graph"),
          py::arg("spec"), py::arg("minimal_trust") = false);
    m.def("fit_growth_exponent", &fit_growth_exponent, py::arg("n_cost"));

    // ── convergence ──
    py::class_<StateSpace>(m, "StateSpace")
        .def(py::init([](std::vector<std::string> states) { return StateSpace{std::move(states)}; }),
             py::arg("states"))
        .def_readwrite("states", &StateSpace::states)
        .def("size", &StateSpace::size);

    py::class_<Operator>(m, "Operator")
        .def(py::init([](std::string name, StateSpace space, std::vector<std::size_t> table) {
                 return Operator{std::move(name), std::move(space), std::move(table)};
             }),
             py::arg("name"), py::arg("space"), py::arg("table"))
        .def_readwrite("name", &Operator::name)
        .def_readwrite("space", &Operator::space)
        .def_readwrite("table", &Operator::table);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("convergent", &ConvergenceReport::convergent)
        .def_readonly("orbit_lengths", &ConvergenceReport::orbit_lengths);

    m.def("apply", &ptkit::apply, py::arg("op"), py::arg("state"));
    m.def("apply_index", &apply_index, py::arg("op"), py::arg("q"));
    m.def("is_idempotent", &is_idempotent, py::arg("op"));
    m.def("is_convergent", py::overload_cast<const Operator&, std::size_t>(&is_convergent),
          py::arg("op"), py::arg("max_iter"));
    m.def("is_convergent", py::overload_cast<const Operator&>(&is_convergent), py::arg("op"));
    m.def("fixed_points", &fixed_points, py::arg("op"));

    // ── model document and reports ──
    py::class_<ChainSpecEntry>(m, "ChainSpecEntry")
        .def(py::init([](ChainSpec spec, bool minimal_trust) {
                 return ChainSpecEntry{spec, minimal_trust};
             }),
             py::arg("spec") = ChainSpec{}, py::arg("minimal_trust") = false)
        .def_readwrite("spec", &ChainSpecEntry::spec)
        .def_readwrite("minimal_trust", &ChainSpecEntry::minimal_trust);

    py::class_<ModelDocument>(m, "ModelDocument")
        .def(py::init<>())
        .def_readwrite("version", &ModelDocument::version)
        .def_readwrite("graph", &ModelDocument::graph)
        .def_readwrite("agent_vocabs", &ModelDocument::agent_vocabs)
        .def_readwrite("vocabularies", &ModelDocument::vocabularies)
        .def_readwrite("matrices", &ModelDocument::matrices)
        .def_readwrite("trust_default", &ModelDocument::trust_default)
        .def_readwrite("trust_agents", &ModelDocument::trust_agents)
        .def_readwrite("channels", &ModelDocument::channels)
        .def_readwrite("operators", &ModelDocument::operators)
        .def_readwrite("chains", &ModelDocument::chains)
        .def(py::self == py::self);

    py::class_<Report>(m, "Report")
        .def_readonly("title", &Report::title)
        .def_readonly("findings", &Report::findings)
        .def_readonly("metrics", &Report::metrics)
        .def_readonly("verdicts", &Report::verdicts)
        .def("has_errors", &Report::has_errors)
        .def("to_text", &Report::to_text)
        .def("to_json", &Report::to_json);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("log", &SimulationResult::log)
        .def_readonly("report", &SimulationResult::report);

    m.def("parse_model", &parse_model, py::arg("json_text"), py::arg("origin") = "<string>");
    m.def("load_model", &load_model, py::arg("path"));
    m.def("emit_model", &emit_model, py::arg("doc"));
    m.def("chain_model", &chain_model, py::arg("spec"), py::arg("minimal_trust") = false);
    m.def("check_model", &check_model, py::arg("doc"));
    m.def("simulate_model", &simulate_model, py::arg("doc"), py::arg("horizon"), py::arg("seed"),
          py::arg("mode") = SimMode::Deterministic);
    m.def("audit_chain", &audit_chain, py::arg("doc"), py::arg("entry"));
    m.def("proxy_range_report", &proxy_range_report, py::arg("lo"), py::arg("hi"),
          py::arg("with_direct_trust") = false);
}
