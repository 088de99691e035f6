#include "ptkit/composition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ptkit/errors.hpp"

namespace ptkit {

namespace {

bool symbol_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
}

// term := symbol | symbol '(' term ')'
bool parse_term(std::string_view text, std::size_t& pos, std::vector<std::string>& nest) {
    std::size_t start = pos;
    while (pos < text.size() && symbol_char(text[pos])) ++pos;
    if (pos == start) return false;
    nest.emplace_back(text.substr(start, pos - start));
    if (pos < text.size() && text[pos] == '(') {
        ++pos;
        if (!parse_term(text, pos, nest)) return false;
        if (pos >= text.size() || text[pos] != ')') return false;
        ++pos;
    }
    return true;
}

std::string term_str(const std::vector<std::string>& nest) {
    std::string out;
    for (const auto& s : nest) {
        out += s;
        out += '(';
    }
    if (!out.empty()) out.pop_back();
    out += std::string(nest.size() - 1, ')');
    return out;
}

Body expr_body(const BodyExpr& e) {
    Body b;
    b.words.insert(e.str());
    return b;
}

std::string words_key(const Body& b) {
    std::string out;
    for (const auto& w : b.words) {
        out += w;
        out += '\x1f';
    }
    return out;
}

std::string promise_key(const Promise& p) {
    std::ostringstream out;
    out << p.promiser << '\x1e' << p.promisee << '\x1e'
        << (p.is_offer() ? '+' : '-') << '\x1e' << words_key(p.body) << '\x1e'
        << (p.kind == PromiseKind::Imposition ? 'i' : 'p') << '\x1e'
        << (p.continuity == Continuity::OneShot ? 'o' : 'c');
    return out.str();
}

std::string describe(const Promise& p) {
    std::string body;
    for (const auto& w : p.body.words) {
        if (!body.empty()) body += ", ";
        body += w;
    }
    return std::string(p.is_offer() ? "+" : "-") + "{" + body + "} " + p.promiser +
           " -> " + p.promisee;
}

// Providers of a condition: offers towards the depender's promiser whose
// body covers the condition.
std::vector<std::size_t> providers_of(const PromiseGraph& g, const Promise& p, const Body& cond) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < g.promises.size(); ++k) {
        const Promise& q = g.promises[k];
        if (q.is_offer() && q.promisee == p.promiser && q.body.covers(cond))
            out.push_back(k);
    }
    return out;
}

// Tarjan strongly connected components over an adjacency list; returns the
// components in a deterministic order.
std::vector<std::vector<std::size_t>> strongly_connected(
    const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    int counter = 0;

    struct Frame { std::size_t v; std::size_t edge; };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge < adj[v].size()) {
                const std::size_t w = adj[v][edge++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<std::size_t> comp;
                    while (true) {
                        const std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
                const std::size_t finished = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
            }
        }
    }
    std::sort(components.begin(), components.end());
    return components;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t x : xs) {
        if (!out.empty()) out += ", ";
        out += std::to_string(x);
    }
    return out;
}

} // namespace

std::optional<BodyExpr> BodyExpr::try_parse(std::string_view text) {
    BodyExpr expr;
    std::size_t pos = 0;
    std::vector<std::string> head;
    if (!parse_term(text, pos, head)) return std::nullopt;
    expr.terms.push_back(std::move(head));
    // conjuncts: " ^ (term)"
    while (pos < text.size()) {
        if (text.compare(pos, 4, " ^ (") != 0) return std::nullopt;
        pos += 4;
        std::vector<std::string> term;
        if (!parse_term(text, pos, term)) return std::nullopt;
        if (pos >= text.size() || text[pos] != ')') return std::nullopt;
        ++pos;
        expr.terms.push_back(std::move(term));
    }
    return expr;
}

BodyExpr BodyExpr::parse(const std::string& text) {
    auto parsed = try_parse(text);
    if (!parsed) fail("ParseError", "malformed body expression '" + text + "'");
    return *parsed;
}

std::string BodyExpr::str() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            out += term_str(terms[i]);
        } else {
            out += " ^ (";
            out += term_str(terms[i]);
            out += ')';
        }
    }
    return out;
}

std::size_t BodyExpr::size() const {
    std::size_t n = 0;
    for (const auto& t : terms) n += t.size();
    return n;
}

std::vector<std::string> BodyExpr::symbols() const {
    std::vector<std::string> out;
    for (const auto& t : terms)
        for (const auto& s : t)
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

std::vector<std::string> BodyExpr::implied_conditions() const {
    std::vector<std::string> out;
    if (!terms.empty() && terms.front().size() > 1)
        out.push_back(term_str({terms.front().begin() + 1, terms.front().end()}));
    for (std::size_t i = 1; i < terms.size(); ++i) out.push_back(term_str(terms[i]));
    return out;
}

std::vector<Body> effective_conditions(const Promise& p) {
    std::vector<Body> out = p.conditions;
    for (const auto& word : p.body.words) {
        auto expr = BodyExpr::try_parse(word);
        if (!expr) continue;
        for (const auto& cond : expr->implied_conditions()) {
            Body b;
            b.words.insert(cond);
            out.push_back(std::move(b));
        }
    }
    return out;
}

PromiseGraph gen_proxy_chain(const ChainSpec& spec) {
    const std::size_t n = spec.n_proxies;
    std::vector<AgentId> agents{"S"};
    for (std::size_t k = 1; k <= n; ++k) agents.push_back("P" + std::to_string(k));
    agents.push_back("C");
    PromiseGraph g = make_graph(agents);

    const auto proxy = [](std::size_t k) { return "P" + std::to_string(k); };
    // Downstream handoff content arriving at P_k: P_{k-1}(..P_1(S)..).
    const auto handed = [&](std::size_t k) {
        std::vector<std::string> nest;
        for (std::size_t i = k; i >= 1; --i) nest.push_back(proxy(i));
        nest.push_back("S");
        return nest;
    };
    // Upstream assurance issued by P_k: P_k(P_{k+1}(..P_N..)).
    const auto assured = [&](std::size_t k) {
        std::vector<std::string> nest;
        for (std::size_t i = k; i <= n; ++i) nest.push_back(proxy(i));
        return nest;
    };

    const auto emit_line = [&](const AgentId& from, const AgentId& to, const BodyExpr& expr) {
        Promise offer;
        offer.promiser = from;
        offer.promisee = to;
        offer.polarity = Polarity::Offer;
        offer.body = expr_body(expr);
        offer.referenced_agents = expr.symbols();
        Promise accept = offer;
        accept.promiser = to;
        accept.promisee = from;
        accept.polarity = Polarity::Accept;
        g = add_promise(std::move(g), std::move(offer));
        g = add_promise(std::move(g), std::move(accept));
    };

    // End-to-end conditional from the server, nesting the whole proxy chain.
    BodyExpr end_to_end;
    {
        std::vector<std::string> nest{"S"};
        for (std::size_t k = 1; k <= n; ++k) nest.push_back(proxy(k));
        end_to_end.terms.push_back(std::move(nest));
        if (spec.with_direct_trust)
            for (std::size_t k = 1; k <= n; ++k)
                end_to_end.terms.push_back({proxy(k)});
    }
    emit_line("S", "C", end_to_end);

    for (std::size_t k = 1; k <= n; ++k) {
        const AgentId upstream = k == 1 ? AgentId("S") : proxy(k - 1);

        BodyExpr handoff;  // what the upstream agent hands to P_k
        handoff.terms.push_back(handed(k - 1));
        emit_line(upstream, proxy(k), handoff);

        BodyExpr assurance;  // delivery assurance flowing back up
        assurance.terms.push_back(assured(k));
        emit_line(proxy(k), upstream, assurance);

        BodyExpr delivery;  // proxy's own conditional promise to the client
        delivery.terms.push_back(handed(k));
        if (k < n) delivery.terms.push_back(assured(k + 1));
        emit_line(proxy(k), "C", delivery);
    }

    if (spec.with_direct_trust)
        for (std::size_t k = 1; k <= n; ++k) {
            BodyExpr direct;
            direct.terms.push_back({proxy(k)});
            emit_line(proxy(k), "S", direct);
        }
    return g;
}

std::size_t chain_lines(const PromiseGraph& graph) {
    return static_cast<std::size_t>(
        std::count_if(graph.promises.begin(), graph.promises.end(),
                      [](const Promise& p) { return p.is_offer(); }));
}

std::size_t chain_cost(const PromiseGraph& graph) {
    std::size_t total = 0;
    for (const Promise& p : graph.promises) {
        if (!p.is_offer()) continue;
        for (const auto& word : p.body.words) {
            auto expr = BodyExpr::try_parse(word);
            total += expr ? expr->size() : 1;
        }
    }
    return total;
}

std::vector<Finding> verify_continuity(const PromiseGraph& graph) {
    std::vector<Finding> out;
    const auto& ps = graph.promises;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].continuity == Continuity::OneShot)
            out.push_back({"OneShotPromise", Severity::Warn, {i},
                           describe(ps[i]) + " is one-shot; continuous operation requires "
                                             "promises that never become invalid"});
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (const Body& cond : effective_conditions(ps[i])) {
            for (std::size_t q : providers_of(graph, ps[i], cond)) {
                if (ps[q].continuity != Continuity::OneShot) continue;
                out.push_back({"ConditionOnOneShot", Severity::Warn, {i, q},
                               describe(ps[i]) + " is conditioned on one-shot promise #" +
                                   std::to_string(q)});
            }
        }
    }
    return out;
}

std::vector<Finding> detect_bootstrap_deadlock(const PromiseGraph& graph) {
    const auto& ps = graph.promises;
    std::vector<std::size_t> offers;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i].is_offer()) offers.push_back(i);

    std::vector<std::vector<Body>> conds(offers.size());
    for (std::size_t a = 0; a < offers.size(); ++a)
        conds[a] = effective_conditions(ps[offers[a]]);

    // Enablement: offer a feeds offer b when it reaches b's promiser and
    // either satisfies one of b's conditions or b needs nothing to act.
    std::vector<std::vector<std::size_t>> full(offers.size()), conditional(offers.size());
    for (std::size_t a = 0; a < offers.size(); ++a) {
        for (std::size_t b = 0; b < offers.size(); ++b) {
            if (a == b) continue;
            if (ps[offers[a]].promisee != ps[offers[b]].promiser) continue;
            const bool satisfies =
                std::any_of(conds[b].begin(), conds[b].end(), [&](const Body& c) {
                    return ps[offers[a]].body.covers(c);
                });
            if (satisfies || conds[b].empty()) full[a].push_back(b);
            if (satisfies && !conds[a].empty() && !conds[b].empty())
                conditional[a].push_back(b);
        }
    }

    std::vector<Finding> out;
    std::vector<std::vector<std::size_t>> deadlocked;
    for (const auto& comp : strongly_connected(conditional)) {
        const bool cyclic = comp.size() > 1;
        if (!cyclic) continue;
        std::vector<std::size_t> members;
        for (std::size_t a : comp) members.push_back(offers[a]);
        deadlocked.push_back(comp);
        out.push_back({"BootstrapDeadlock", Severity::Error, members,
                       "conditional offers " + join_indices(members) +
                           " wait on each other in a cycle; no agent acts unconditionally"});
    }
    for (const auto& comp : strongly_connected(full)) {
        if (comp.size() <= 1) continue;
        if (std::find(deadlocked.begin(), deadlocked.end(), comp) != deadlocked.end())
            continue;
        const bool has_cond = std::any_of(comp.begin(), comp.end(), [&](std::size_t a) {
            return !conds[a].empty();
        });
        const bool has_uncond = std::any_of(comp.begin(), comp.end(), [&](std::size_t a) {
            return conds[a].empty();
        });
        if (!has_cond || !has_uncond) continue;
        std::vector<std::size_t> members;
        for (std::size_t a : comp) members.push_back(offers[a]);
        out.push_back({"BootstrappedLoop", Severity::Info, members,
                       "dependency loop over offers " + join_indices(members) +
                           " is bootstrapped by an agent acting unconditionally"});
    }
    return out;
}

FragilityReport fragility(const PromiseGraph& graph,
                          std::size_t dependent,
                          const std::map<std::size_t, std::string>& redundancy) {
    if (dependent >= graph.promises.size())
        fail("UnresolvedReference", "promise index " + std::to_string(dependent) + " out of range");
    const Promise& p = graph.promises[dependent];
    const auto conds = effective_conditions(p);
    if (!p.is_offer() || conds.empty())
        fail("NotAConditional",
             "promise #" + std::to_string(dependent) + " aggregates no inputs");

    FragilityReport report;
    report.dependent = dependent;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (const Body& cond : conds) {
        const std::string fallback = "condition " + words_key(cond);
        auto provs = providers_of(graph, p, cond);
        if (provs.empty()) {
            groups[fallback];  // a missing input is its own single point
            continue;
        }
        for (std::size_t q : provs) {
            auto it = redundancy.find(q);
            groups[it == redundancy.end() ? fallback : it->second].push_back(q);
        }
    }
    for (auto& [label, provs] : groups) {
        std::sort(provs.begin(), provs.end());
        provs.erase(std::unique(provs.begin(), provs.end()), provs.end());
        if (provs.size() <= 1) ++report.single_points;
        report.groups.push_back({label, provs});
    }
    report.fragile = report.single_points > 0;
    return report;
}

std::vector<Finding> completeness_against_pattern(const PromiseGraph& graph,
                                                  const ChainSpec& spec,
                                                  bool minimal_trust) {
    std::vector<Finding> out;
    const PromiseGraph expected = gen_proxy_chain(spec);

    std::map<std::string, std::vector<std::size_t>> have;
    for (std::size_t i = 0; i < graph.promises.size(); ++i)
        have[promise_key(graph.promises[i])].push_back(i);

    std::map<std::string, std::size_t> matched;
    for (const Promise& want : expected.promises) {
        const std::string key = promise_key(want);
        auto it = have.find(key);
        if (it == have.end() || matched[key] >= it->second.size()) {
            out.push_back({"MissingPromise", Severity::Error, {},
                           "pattern promise " + describe(want) + " is missing"});
        } else {
            ++matched[key];
        }
    }
    for (const auto& [key, indices] : have) {
        const std::size_t used = matched.count(key) ? matched[key] : 0;
        for (std::size_t i = used; i < indices.size(); ++i)
            out.push_back({"ExtraPromise", Severity::Info, {indices[i]},
                           describe(graph.promises[indices[i]]) +
                               " is not part of the declared chain pattern"});
    }

    if (minimal_trust) {
        const auto bindings = bind(graph);
        for (std::size_t a = 0; a < graph.agents.size(); ++a) {
            for (std::size_t b = a + 1; b < graph.agents.size(); ++b) {
                const AgentId& left = graph.agents[a];
                const AgentId& right = graph.agents[b];
                const bool bound = std::any_of(
                    bindings.begin(), bindings.end(), [&](const Binding& bd) {
                        if (bd.inert) return false;
                        const Promise& o = graph.promises[bd.offer];
                        return (o.promiser == left && o.promisee == right) ||
                               (o.promiser == right && o.promisee == left);
                    });
                if (!bound)
                    out.push_back({"IncompleteGraph", Severity::Warn, {},
                                   "minimal trust requires a complete graph, but '" + left +
                                       "' and '" + right + "' share no live binding"});
            }
        }
    }
    return out;
}

double fit_growth_exponent(const std::vector<std::pair<double, double>>& n_cost) {
    if (n_cost.size() < 2) fail("ParseError", "growth fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, cost] : n_cost) {
        const double x = std::log(n), y = std::log(cost);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(n_cost.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace ptkit
