// Acceptance suite: end-to-end checks of the toolkit's contracts, one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptkit/composition.hpp"
#include "ptkit/convergence.hpp"
#include "ptkit/dynamics.hpp"
#include "ptkit/errors.hpp"
#include "ptkit/language.hpp"
#include "ptkit/model.hpp"
#include "ptkit/promise.hpp"
#include "ptkit/report.hpp"
#include "ptkit/trust.hpp"

using namespace ptkit;

namespace {

std::vector<std::string> g_failures;

void expect(bool ok, const std::string& what) {
    if (!ok) g_failures.push_back(what);
}

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ── criterion 1: the worked translation example ──
void translation_example() {
    const Vocabulary transport{"transport", {"send", "receive", "seek", "forward", "back"}};
    const Vocabulary fileops{"fileops", {"put", "get", "append"}};
    const TranslationMatrix to_fileops{
        "transport", "fileops",
        {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 1, 1, 0}}};
    TranslationMatrix to_transport{"fileops", "transport", {}};
    to_transport.entries.assign(5, std::vector<std::int64_t>(3, 0));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 5; ++c) to_transport.entries[c][r] = to_fileops.entries[r][c];

    const auto word = [&](const Vocabulary& v, const std::string& w) {
        BodyVector vec{v.id, std::vector<std::int64_t>(v.dimension(), 0)};
        vec.coeffs[static_cast<std::size_t>(
            std::find(v.symbols.begin(), v.symbols.end(), w) - v.symbols.begin())] = 1;
        return vec;
    };
    expect(translate(word(fileops, "put"), to_transport).coeffs ==
               std::vector<std::int64_t>{1, 0, 0, 0, 0},
           "put must translate to send");
    expect(translate(word(fileops, "get"), to_transport).coeffs ==
               std::vector<std::int64_t>{0, 1, 0, 0, 0},
           "get must translate to receive");
    expect(translate(word(fileops, "append"), to_transport).coeffs ==
               std::vector<std::int64_t>{1, 0, 1, 1, 0},
           "append must translate to seek+forward+send");

    const auto cls = classify(to_fileops);
    expect(cls.cls == MatrixClass::OneWay, "the 3x5 matrix must classify one-way");
    expect(cls.rank == 3, "the 3x5 matrix must have rank 3");
}

// ── criterion 2: unitarity over permutations, impossibility for the 3x5 ──
void unitarity() {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            TranslationMatrix forth{"a", "b", {}}, back{"b", "a", {}};
            forth.entries.assign(n, std::vector<std::int64_t>(n, 0));
            back.entries.assign(n, std::vector<std::int64_t>(n, 0));
            for (std::size_t i = 0; i < n; ++i) {
                forth.entries[perm[i]][i] = 1;
                back.entries[i][perm[i]] = 1;
            }
            if (!unitarity_check(forth, back)) {
                expect(false, "permutation of dimension " + std::to_string(n) +
                                  " paired with its inverse must be unitary");
                return;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    const TranslationMatrix worked{
        "transport", "fileops",
        {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 1, 1, 0}}};
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        TranslationMatrix candidate{"fileops", "transport", {}};
        candidate.entries.assign(5, std::vector<std::int64_t>(3));
        for (auto& row : candidate.entries)
            for (auto& x : row) x = static_cast<std::int64_t>(rng() % 11) - 5;
        if (unitarity_check(worked, candidate)) {
            expect(false, "no right-candidate can invert the rank-3 matrix on 5 words");
            return;
        }
    }
}

// ── criterion 3: the proxy-chain pattern and its quadratic cost ──
void proxy_chain() {
    const std::vector<std::string> expected{
        "S(P1(P2(P3)))", "S",          "P1(P2(P3))", "P1(S) ^ (P2(P3))", "P1(S)",
        "P2(P3)",        "P2(P1(S)) ^ (P3)", "P2(P1(S))", "P3",          "P3(P2(P1(S)))"};
    const auto g = gen_proxy_chain({3, false});
    std::vector<std::string> bodies;
    for (const auto& p : g.promises)
        if (p.is_offer()) bodies.push_back(*p.body.words.begin());
    expect(bodies == expected, "three-proxy bodies must match the canonical pattern");

    for (std::size_t n = 0; n <= 64; ++n)
        if (chain_lines(gen_proxy_chain({n, false})) != 3 * n + 1) {
            expect(false, "line count must be 3N+1 at N=" + std::to_string(n));
            break;
        }

    std::vector<std::pair<double, double>> points;
    for (std::size_t n : {4, 8, 16, 32, 64})
        points.emplace_back(static_cast<double>(n),
                            static_cast<double>(chain_cost(gen_proxy_chain({n, false}))));
    const double exponent = fit_growth_exponent(points);
    expect(exponent >= 1.85 && exponent <= 2.15,
           "log-log growth exponent must be 2.0 +/- 0.15, got " + std::to_string(exponent));
}

// ── criterion 4: continuity of chains, bootstrap of remuneration loops ──
void continuity_bootstrap() {
    for (std::size_t n : {0, 1, 2, 3, 5, 8, 13, 21, 34, 64}) {
        if (!verify_continuity(gen_proxy_chain({n, false})).empty() ||
            !verify_continuity(gen_proxy_chain({n, true})).empty()) {
            expect(false, "generated chains must satisfy continuity at N=" + std::to_string(n));
            break;
        }
    }

    Body goods, payment;
    goods.words.insert("goods");
    payment.words.insert("payment");
    PromiseGraph loop = make_graph({"S", "F"});
    Promise sell;
    sell.promiser = "S";
    sell.promisee = "F";
    sell.body = goods;
    sell.conditions = {payment};
    Promise pay;
    pay.promiser = "F";
    pay.promisee = "S";
    pay.body = payment;
    pay.conditions = {goods};
    loop = add_promise(loop, sell);
    loop = add_promise(loop, pay);

    const auto stuck = detect_bootstrap_deadlock(loop);
    const bool deadlocked = std::any_of(stuck.begin(), stuck.end(), [](const Finding& f) {
        return f.code == "BootstrapDeadlock" && f.severity == Severity::Error;
    });
    expect(deadlocked, "the two-promise remuneration cycle must deadlock");

    for (int which = 0; which < 2; ++which) {
        PromiseGraph variant = loop;
        variant.promises[which].conditions.clear();
        const auto live = detect_bootstrap_deadlock(variant);
        const bool still = std::any_of(live.begin(), live.end(), [](const Finding& f) {
            return f.code == "BootstrapDeadlock";
        });
        expect(!still, "an unconditional offer must clear the deadlock");
        const bool bootstrapped = std::any_of(live.begin(), live.end(), [](const Finding& f) {
            return f.code == "BootstrappedLoop" && f.severity == Severity::Info;
        });
        expect(bootstrapped, "the cleared loop must be reported as bootstrapped");
    }
}

// ── criterion 5: trust kinetics energy identity ──
void trust_kinetics() {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 10000; ++i) {
        const RiskPolicy policy{0.05 + 10.0 * unit(rng), 2.0 * unit(rng)};
        const double v_r = 10.0 * unit(rng), v_s = 10.0 * unit(rng);
        const double v = sampling_rate(v_r, v_s, policy);
        const double lhs = kinetic_cost(v, policy) + policy.risk;
        const double rhs = std::max(policy.risk, v_r - v_s);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (std::abs(lhs - rhs) > 1e-9 * scale) {
            expect(false, "energy identity violated at point " + std::to_string(i));
            return;
        }
        if (v_r - v_s <= policy.risk && v != 0.0) {
            expect(false, "sampling must stop when the gap is within accepted risk");
            return;
        }
    }
}

// ── criterion 6: Nyquist regimes in both simulation modes ──
void nyquist() {
    PromiseGraph g = make_graph({"S", "R"});
    Promise off;
    off.promiser = "S";
    off.promisee = "R";
    off.body.words.insert("data");
    Promise acc = off;
    acc.promiser = "R";
    acc.promisee = "S";
    acc.polarity = Polarity::Accept;
    g = add_promise(g, off);
    g = add_promise(g, acc);
    std::map<AgentId, TrustConfig> configs{{"R", TrustConfig{}}};

    const auto faithful = run(g, {}, configs, {{0, 1, 1.0, 2.5}},
                              {10000, 1, SimMode::Deterministic});
    expect(faithful.count(EventType::Missed) == 0,
           "a faithful deterministic channel must never miss");
    expect(faithful.count(EventType::Emitted) == 10000, "emission count must match B * horizon");

    // f = B sits at half the Nyquist rate: the miss probability is one half.
    const auto lossy = run(g, {}, configs, {{0, 1, 10.0, 10.0}},
                           {10000, 20240 , SimMode::Stochastic});
    const double emitted = static_cast<double>(lossy.count(EventType::Emitted));
    const double missed = static_cast<double>(lossy.count(EventType::Missed));
    expect(emitted == 100000, "the lossy run must emit 1e5 events");
    const double rate = missed / emitted;
    expect(std::abs(rate - 0.5) <= 0.02,
           "empirical miss rate must be 0.5 +/- 0.02, got " + std::to_string(rate));
}

// ── criterion 7: spectrum entropy ──
void entropy() {
    for (std::size_t n = 1; n <= 1024; ++n) {
        OutcomeSpectrum s;
        for (std::size_t i = 0; i < n; ++i) {
            s.outcomes.push_back("o" + std::to_string(i));
            s.p.push_back(1.0 / static_cast<double>(n));
        }
        const double h = spectrum_entropy(s);
        if (std::abs(h - std::log2(static_cast<double>(n))) > 1e-12) {
            expect(false, "uniform entropy must equal log2(N) at N=" + std::to_string(n));
            break;
        }
    }

    std::mt19937_64 rng(4242);
    for (std::size_t n : {2, 4, 8}) {
        const double bound = std::log2(static_cast<double>(n)) + 1e-12;
        for (int round = 0; round < 1000; ++round) {
            OutcomeSpectrum s;
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s.outcomes.push_back("o" + std::to_string(i));
                const double w = 1e-12 + unit(rng);
                s.p.push_back(w);
                total += w;
            }
            for (auto& p : s.p) p /= total;
            if (spectrum_entropy(s) > bound) {
                expect(false, "uniform must maximize entropy at N=" + std::to_string(n));
                return;
            }
        }
    }
}

// ── criterion 8: convergence on every endofunction of four states ──
void convergence_exhaustive() {
    const StateSpace space{{"q0", "q1", "q2", "q3"}};
    for (std::size_t code = 0; code < 256; ++code) {
        Operator op{"f" + std::to_string(code), space,
                    {code % 4, (code / 4) % 4, (code / 16) % 4, (code / 64) % 4}};
        // Brute-force oracle: walk each orbit and look for a self-mapped state.
        bool oracle = true;
        for (std::size_t q = 0; q < 4 && oracle; ++q) {
            std::size_t x = q;
            bool settled = false;
            for (int step = 0; step <= 10; ++step) {
                if (op.table[x] == x) {
                    settled = true;
                    break;
                }
                x = op.table[x];
            }
            oracle = settled;
        }
        const auto report = is_convergent(op);
        if (report.convergent != oracle) {
            expect(false, "convergence verdict must match the orbit simulator on table " +
                              std::to_string(code));
            return;
        }
        if (is_idempotent(op)) {
            if (!report.convergent) {
                expect(false, "idempotent operators must converge (table " +
                                  std::to_string(code) + ")");
                return;
            }
            for (const auto& len : report.orbit_lengths)
                if (!len || *len > 1) {
                    expect(false, "idempotent orbits must settle within one step (table " +
                                      std::to_string(code) + ")");
                    return;
                }
        }
    }
}

// ── criterion 9: determinism and model round-trips ──
void determinism_roundtrip() {
    ModelDocument doc = chain_model({1, false});
    doc.graph.promises[0].keep_prob = 0.6;
    doc.channels.push_back({0, 1, 2.0, 3.0});
    const auto a = simulate_model(doc, 2000, 31337, SimMode::Stochastic);
    const auto b = simulate_model(doc, 2000, 31337, SimMode::Stochastic);
    expect(a.log.to_tsv() == b.log.to_tsv(), "identical seeds must give identical logs");
    expect(a.report.to_json() == b.report.to_json(),
           "identical seeds must give identical reports");

    for (std::size_t n : {0, 1, 3, 8}) {
        for (bool direct : {false, true}) {
            const auto model = chain_model({n, direct});
            if (!(parse_model(emit_model(model)) == model)) {
                expect(false, "load(emit) must be the identity on generated chains");
                return;
            }
        }
    }
    const std::filesystem::path dir{PTKIT_MODELS_DIR};
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        const auto model = load_model(entry.path().string());
        if (!(parse_model(emit_model(model)) == model)) {
            expect(false, "load(emit) must be the identity on " + entry.path().string());
            return;
        }
    }
    expect(seen >= 4, "the bundled model directory must not be empty");
}

struct Criterion {
    const char* name;
    std::function<void()> check;
    double budget_seconds;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"translation example (put/get/append, one-way 3x5)", translation_example, 1.0},
        {"unitarity (permutations <= 6, no inverse for 3x5)", unitarity, 5.0},
        {"proxy chain (mp bodies, 3N+1, quadratic cost)", proxy_chain, 5.0},
        {"continuity and bootstrap (chains, remuneration loop)", continuity_bootstrap, 1.0},
        {"trust kinetics (energy identity on 1e4 grid)", trust_kinetics, 1.0},
        {"nyquist (0 misses faithful, 0.5 miss rate at f=B)", nyquist, 10.0},
        {"entropy (log2 N to 1e-12, uniform maximal)", entropy, 2.0},
        {"convergence (256 endofunctions vs orbit oracle)", convergence_exhaustive, 2.0},
        {"determinism and round-trip (logs, load/emit identity)", determinism_roundtrip, 0.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        g_failures.clear();
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.check();
        } catch (const std::exception& e) {
            g_failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
            g_failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget " +
                                 std::to_string(criterion.budget_seconds) + "s");
        }
        const bool ok = g_failures.empty();
        std::printf("[%s] %-55s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.name, elapsed);
        for (const auto& why : g_failures) std::printf("       - %s\n", why.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
