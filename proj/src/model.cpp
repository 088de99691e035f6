#include "ptkit/model.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ptkit/errors.hpp"

namespace ptkit {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    fail("ParseError", origin + ": " + what);
}

[[noreturn]] void unresolved(const std::string& origin, const std::string& what) {
    fail("UnresolvedReference", origin + ": " + what);
}

const njson& expect(const njson& j, const char* key, const std::string& origin,
                    const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) bad(origin, where + " is missing required key '" + key + "'");
    return *it;
}

Body parse_body(const njson& j, const std::string& origin, const std::string& where) {
    if (!j.is_object()) bad(origin, where + " must be an object");
    Body body;
    for (const auto& w : expect(j, "words", origin, where)) {
        if (!w.is_string() || w.get<std::string>().empty())
            bad(origin, where + " words must be nonempty strings");
        body.words.insert(w.get<std::string>());
    }
    if (body.words.empty()) bad(origin, where + " must carry at least one word");
    if (j.contains("attrs")) {
        for (const auto& [key, value] : j.at("attrs").items()) {
            if (!value.is_number()) bad(origin, where + " attr '" + key + "' must be numeric");
            body.attrs[key] = value.get<double>();
        }
    }
    return body;
}

ojson emit_body(const Body& body) {
    ojson out;
    out["words"] = body.words;
    if (!body.attrs.empty()) out["attrs"] = body.attrs;
    return out;
}

TrustConfig parse_trust_config(const njson& j, TrustConfig base, const std::string& origin,
                               const std::string& where) {
    if (j.contains("rho")) base.policy.rho = j.at("rho").get<double>();
    if (j.contains("risk")) base.policy.risk = j.at("risk").get<double>();
    if (j.contains("lambda")) base.lambda = j.at("lambda").get<double>();
    if (j.contains("V_R")) base.v_r = j.at("V_R").get<double>();
    if (!(base.policy.rho > 0.0)) bad(origin, where + ": rho must be positive");
    if (base.policy.risk < 0.0) bad(origin, where + ": risk must be nonnegative");
    if (!(base.lambda > 0.0 && base.lambda <= 1.0))
        bad(origin, where + ": lambda must lie in (0, 1]");
    return base;
}

ojson emit_trust_config(const TrustConfig& tc) {
    ojson out;
    out["rho"] = tc.policy.rho;
    out["risk"] = tc.policy.risk;
    out["lambda"] = tc.lambda;
    out["V_R"] = tc.v_r;
    return out;
}

} // namespace

const Vocabulary* ModelDocument::find_vocabulary(const std::string& id) const {
    for (const auto& v : vocabularies)
        if (v.id == id) return &v;
    return nullptr;
}

const TranslationMatrix* ModelDocument::find_matrix(const std::string& from,
                                                    const std::string& to) const {
    for (const auto& m : matrices)
        if (m.from_vocab == from && m.to_vocab == to) return &m;
    return nullptr;
}

const Operator* ModelDocument::find_operator(const std::string& name) const {
    for (const auto& op : operators)
        if (op.name == name) return &op;
    return nullptr;
}

TrustConfig ModelDocument::trust_for(const AgentId& agent) const {
    auto it = trust_agents.find(agent);
    return it == trust_agents.end() ? trust_default : it->second;
}

ModelDocument parse_model(const std::string& json_text, const std::string& origin) {
    njson j;
    try {
        j = njson::parse(json_text);
    } catch (const njson::parse_error& e) {
        fail("ParseError", origin + ": " + e.what());
    }
    if (!j.is_object()) bad(origin, "model document must be a JSON object");

    ModelDocument doc;
    const auto& version = expect(j, "version", origin, "document");
    if (!version.is_number_integer()) bad(origin, "version must be an integer");
    doc.version = version.get<int>();
    if (doc.version != kModelVersion)
        fail("UnsupportedVersion",
             origin + ": version " + std::to_string(doc.version) + " is not supported (expected " +
                 std::to_string(kModelVersion) + ")");

    std::vector<AgentId> agents;
    for (const auto& a : expect(j, "agents", origin, "document")) {
        if (a.is_string()) {
            agents.push_back(a.get<std::string>());
        } else if (a.is_object()) {
            agents.push_back(expect(a, "name", origin, "agent").get<std::string>());
            if (a.contains("vocab"))
                doc.agent_vocabs[agents.back()] = a.at("vocab").get<std::string>();
        } else {
            bad(origin, "agents must be names or {name, vocab} objects");
        }
    }
    doc.graph = make_graph(std::move(agents));

    if (j.contains("vocabularies")) {
        for (const auto& v : j.at("vocabularies")) {
            Vocabulary vocab;
            vocab.id = expect(v, "id", origin, "vocabulary").get<std::string>();
            for (const auto& s : expect(v, "symbols", origin, "vocabulary " + vocab.id))
                vocab.symbols.push_back(s.get<std::string>());
            if (vocab.symbols.empty()) bad(origin, "vocabulary " + vocab.id + " is empty");
            std::set<std::string> seen(vocab.symbols.begin(), vocab.symbols.end());
            if (seen.size() != vocab.symbols.size())
                bad(origin, "vocabulary " + vocab.id + " repeats a symbol");
            if (doc.find_vocabulary(vocab.id))
                bad(origin, "duplicate vocabulary '" + vocab.id + "'");
            doc.vocabularies.push_back(std::move(vocab));
        }
    }
    for (const auto& [agent, vocab] : doc.agent_vocabs)
        if (!doc.find_vocabulary(vocab))
            unresolved(origin, "agent '" + agent + "' declares unknown vocabulary '" + vocab + "'");

    if (j.contains("matrices")) {
        for (const auto& m : j.at("matrices")) {
            TranslationMatrix matrix;
            matrix.from_vocab = expect(m, "from", origin, "matrix").get<std::string>();
            matrix.to_vocab = expect(m, "to", origin, "matrix").get<std::string>();
            const std::string where = "matrix " + matrix.from_vocab + "->" + matrix.to_vocab;
            const Vocabulary* from = doc.find_vocabulary(matrix.from_vocab);
            const Vocabulary* to = doc.find_vocabulary(matrix.to_vocab);
            if (!from || !to) unresolved(origin, where + " references an unknown vocabulary");
            for (const auto& row : expect(m, "entries", origin, where))
                matrix.entries.push_back(row.get<std::vector<std::int64_t>>());
            if (matrix.rows() != to->dimension())
                bad(origin, where + " must have one row per '" + matrix.to_vocab + "' symbol");
            for (const auto& row : matrix.entries)
                if (row.size() != from->dimension())
                    bad(origin, where + " must have one column per '" + matrix.from_vocab +
                                    "' symbol");
            doc.matrices.push_back(std::move(matrix));
        }
    }

    if (j.contains("promises")) {
        for (const auto& p : j.at("promises")) {
            const std::string where = "promise #" + std::to_string(doc.graph.promises.size());
            Promise promise;
            promise.promiser = expect(p, "promiser", origin, where).get<std::string>();
            promise.promisee = expect(p, "promisee", origin, where).get<std::string>();
            const std::string polarity = expect(p, "polarity", origin, where).get<std::string>();
            if (polarity == "+") promise.polarity = Polarity::Offer;
            else if (polarity == "-") promise.polarity = Polarity::Accept;
            else bad(origin, where + ": polarity must be '+' or '-'");
            promise.body = parse_body(expect(p, "body", origin, where), origin, where + " body");
            if (p.contains("conditions"))
                for (const auto& c : p.at("conditions"))
                    promise.conditions.push_back(parse_body(c, origin, where + " condition"));
            if (p.contains("kind")) {
                const std::string kind = p.at("kind").get<std::string>();
                if (kind == "promise") promise.kind = PromiseKind::Promise;
                else if (kind == "imposition") promise.kind = PromiseKind::Imposition;
                else bad(origin, where + ": kind must be 'promise' or 'imposition'");
            }
            if (p.contains("continuity")) {
                const std::string cont = p.at("continuity").get<std::string>();
                if (cont == "continuous") promise.continuity = Continuity::Continuous;
                else if (cont == "oneshot") promise.continuity = Continuity::OneShot;
                else bad(origin, where + ": continuity must be 'continuous' or 'oneshot'");
            }
            if (p.contains("referenced_agents"))
                for (const auto& r : p.at("referenced_agents"))
                    promise.referenced_agents.push_back(r.get<std::string>());
            if (p.contains("keep_prob")) {
                promise.keep_prob = p.at("keep_prob").get<double>();
                if (promise.keep_prob < 0.0 || promise.keep_prob > 1.0)
                    bad(origin, where + ": keep_prob must lie in [0, 1]");
            }

            if (!doc.graph.has_agent(promise.promiser))
                unresolved(origin, where + " names unknown promiser '" + promise.promiser + "'");
            if (!doc.graph.has_agent(promise.promisee))
                unresolved(origin, where + " names unknown promisee '" + promise.promisee + "'");
            for (const auto& r : promise.referenced_agents)
                if (!doc.graph.has_agent(r))
                    unresolved(origin, where + " references unknown agent '" + r + "'");
            if (promise.promiser == promise.promisee)
                bad(origin, where + ": an agent cannot promise itself");
            if (promise.is_accept() && promise.kind == PromiseKind::Imposition)
                bad(origin, where + ": acceptance cannot be imposed");
            auto vocab_it = doc.agent_vocabs.find(promise.promiser);
            if (vocab_it != doc.agent_vocabs.end()) {
                const Vocabulary* vocab = doc.find_vocabulary(vocab_it->second);
                for (const auto& w : promise.body.words)
                    if (std::find(vocab->symbols.begin(), vocab->symbols.end(), w) ==
                        vocab->symbols.end())
                        unresolved(origin, where + " uses word '" + w + "' outside '" +
                                               promise.promiser + "' vocabulary '" + vocab->id +
                                               "'");
            }
            doc.graph.promises.push_back(std::move(promise));
        }
    }

    if (j.contains("trust")) {
        const auto& t = j.at("trust");
        if (t.contains("default"))
            doc.trust_default =
                parse_trust_config(t.at("default"), TrustConfig{}, origin, "trust default");
        if (t.contains("agents")) {
            for (const auto& [agent, conf] : t.at("agents").items()) {
                if (!doc.graph.has_agent(agent))
                    unresolved(origin, "trust config names unknown agent '" + agent + "'");
                doc.trust_agents[agent] =
                    parse_trust_config(conf, doc.trust_default, origin, "trust for " + agent);
            }
        }
    }

    if (j.contains("channels")) {
        for (const auto& c : j.at("channels")) {
            const std::string where = "channel #" + std::to_string(doc.channels.size());
            ChannelSpec ch;
            ch.offer = expect(c, "offer", origin, where).get<std::size_t>();
            ch.accept = expect(c, "accept", origin, where).get<std::size_t>();
            if (ch.offer >= doc.graph.promises.size() || ch.accept >= doc.graph.promises.size())
                unresolved(origin, where + " references a promise index out of range");
            const Promise& off = doc.graph.promises[ch.offer];
            const Promise& acc = doc.graph.promises[ch.accept];
            if (!off.is_offer() || !acc.is_accept() || off.promiser != acc.promisee ||
                off.promisee != acc.promiser)
                unresolved(origin, where + " does not reference a matched offer/acceptance pair");
            ch.bandwidth = expect(c, "B", origin, where).get<double>();
            if (!(ch.bandwidth > 0.0)) bad(origin, where + ": B must be positive");
            const auto& f = expect(c, "f", origin, where);
            if (f.is_string()) {
                if (f.get<std::string>() != "trust")
                    bad(origin, where + ": f must be a rate or \"trust\"");
            } else {
                ch.fixed_rate = f.get<double>();
                if (*ch.fixed_rate < 0.0) bad(origin, where + ": f must be nonnegative");
            }
            doc.channels.push_back(std::move(ch));
        }
    }

    if (j.contains("operators")) {
        for (const auto& o : j.at("operators")) {
            Operator op;
            op.name = expect(o, "name", origin, "operator").get<std::string>();
            const std::string where = "operator " + op.name;
            if (doc.find_operator(op.name)) bad(origin, "duplicate " + where);
            for (const auto& s : expect(o, "states", origin, where))
                op.space.states.push_back(s.get<std::string>());
            if (op.space.states.empty()) bad(origin, where + " has no states");
            if (op.space.size() > kMaxStates)
                bad(origin, where + " exceeds the state cap of " + std::to_string(kMaxStates));
            std::set<std::string> seen(op.space.states.begin(), op.space.states.end());
            if (seen.size() != op.space.size()) bad(origin, where + " repeats a state label");
            const auto& table = expect(o, "map", origin, where);
            op.table.resize(op.space.size());
            for (std::size_t q = 0; q < op.space.size(); ++q) {
                const std::string& label = op.space.states[q];
                if (!table.contains(label))
                    unresolved(origin, where + " map is not total: no image for '" + label + "'");
                auto image = op.space.index_of(table.at(label).get<std::string>());
                if (!image)
                    unresolved(origin, where + " maps '" + label + "' outside the state space");
                op.table[q] = *image;
            }
            doc.operators.push_back(std::move(op));
        }
    }

    if (j.contains("chains")) {
        for (const auto& c : j.at("chains")) {
            ChainSpecEntry entry;
            entry.spec.n_proxies = expect(c, "n_proxies", origin, "chain spec").get<std::size_t>();
            if (c.contains("with_direct_trust"))
                entry.spec.with_direct_trust = c.at("with_direct_trust").get<bool>();
            if (c.contains("minimal_trust"))
                entry.minimal_trust = c.at("minimal_trust").get<bool>();
            doc.chains.push_back(entry);
        }
    }
    return doc;
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("ParseError", path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str(), path);
}

std::string emit_model(const ModelDocument& doc) {
    ojson j;
    j["version"] = doc.version;

    ojson agents = ojson::array();
    for (const auto& a : doc.graph.agents) {
        auto it = doc.agent_vocabs.find(a);
        if (it == doc.agent_vocabs.end()) {
            agents.push_back(a);
        } else {
            ojson obj;
            obj["name"] = a;
            obj["vocab"] = it->second;
            agents.push_back(obj);
        }
    }
    j["agents"] = agents;

    j["vocabularies"] = ojson::array();
    for (const auto& v : doc.vocabularies) {
        ojson obj;
        obj["id"] = v.id;
        obj["symbols"] = v.symbols;
        j["vocabularies"].push_back(obj);
    }

    j["matrices"] = ojson::array();
    for (const auto& m : doc.matrices) {
        ojson obj;
        obj["from"] = m.from_vocab;
        obj["to"] = m.to_vocab;
        obj["entries"] = m.entries;
        j["matrices"].push_back(obj);
    }

    j["promises"] = ojson::array();
    for (const auto& p : doc.graph.promises) {
        ojson obj;
        obj["promiser"] = p.promiser;
        obj["promisee"] = p.promisee;
        obj["polarity"] = p.is_offer() ? "+" : "-";
        obj["body"] = emit_body(p.body);
        if (!p.conditions.empty()) {
            obj["conditions"] = ojson::array();
            for (const auto& c : p.conditions) obj["conditions"].push_back(emit_body(c));
        }
        if (p.kind == PromiseKind::Imposition) obj["kind"] = "imposition";
        if (p.continuity == Continuity::OneShot) obj["continuity"] = "oneshot";
        if (!p.referenced_agents.empty()) obj["referenced_agents"] = p.referenced_agents;
        if (p.keep_prob != 1.0) obj["keep_prob"] = p.keep_prob;
        j["promises"].push_back(obj);
    }

    ojson trust;
    trust["default"] = emit_trust_config(doc.trust_default);
    if (!doc.trust_agents.empty()) {
        ojson per_agent;
        for (const auto& [agent, tc] : doc.trust_agents) per_agent[agent] = emit_trust_config(tc);
        trust["agents"] = per_agent;
    }
    j["trust"] = trust;

    j["channels"] = ojson::array();
    for (const auto& c : doc.channels) {
        ojson obj;
        obj["offer"] = c.offer;
        obj["accept"] = c.accept;
        obj["B"] = c.bandwidth;
        if (c.fixed_rate) obj["f"] = *c.fixed_rate;
        else obj["f"] = "trust";
        j["channels"].push_back(obj);
    }

    j["operators"] = ojson::array();
    for (const auto& op : doc.operators) {
        ojson obj;
        obj["name"] = op.name;
        obj["states"] = op.space.states;
        ojson table;
        for (std::size_t q = 0; q < op.space.size(); ++q)
            table[op.space.states[q]] = op.space.states[op.table[q]];
        obj["map"] = table;
        j["operators"].push_back(obj);
    }

    j["chains"] = ojson::array();
    for (const auto& entry : doc.chains) {
        ojson obj;
        obj["n_proxies"] = entry.spec.n_proxies;
        obj["with_direct_trust"] = entry.spec.with_direct_trust;
        obj["minimal_trust"] = entry.minimal_trust;
        j["chains"].push_back(obj);
    }

    return j.dump(2) + "\n";
}

ModelDocument chain_model(const ChainSpec& spec, bool minimal_trust) {
    ModelDocument doc;
    doc.graph = gen_proxy_chain(spec);
    doc.chains.push_back({spec, minimal_trust});
    return doc;
}

} // namespace ptkit
