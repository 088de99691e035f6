#include <doctest.h>

#include <filesystem>
#include <string>

#include "helpers.hpp"
#include "ptkit/errors.hpp"
#include "ptkit/model.hpp"
#include "ptkit/report.hpp"

using namespace ptkit;
using namespace ptkit::testing;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "agents": ["S", "R"],
  "promises": [
    {"promiser": "S", "promisee": "R", "polarity": "+", "body": {"words": ["data"]}},
    {"promiser": "R", "promisee": "S", "polarity": "-", "body": {"words": ["data"]}}
  ]
})";

ModelDocument rich_document() {
    ModelDocument doc;
    doc.graph = make_graph({"S", "R", "H", "M"});
    doc.agent_vocabs["S"] = "transport";
    doc.vocabularies.push_back({"transport", {"send", "receive", "seek", "forward", "back"}});
    doc.vocabularies.push_back({"fileops", {"put", "get", "append"}});
    doc.matrices.push_back({"transport", "fileops",
                            {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 1, 1, 0}}});

    Promise off = offer("S", "R", body({"send"}));
    off.body.attrs["rate"] = 2.5;
    off.keep_prob = 0.75;
    doc.graph = add_promise(doc.graph, off);
    doc.graph = add_promise(doc.graph, accept("R", "S", body({"send"})));
    Promise imp = offer("H", "M", body({"ask"}));
    imp.kind = PromiseKind::Imposition;
    imp.continuity = Continuity::OneShot;
    doc.graph = add_promise(doc.graph, imp);
    Promise cond = offer("M", "H", body({"reply"}), {body({"ask"})});
    doc.graph = add_promise(doc.graph, cond);

    doc.trust_default = {{2.0, 0.25}, 0.3, 1.5};
    doc.trust_agents["R"] = {{1.0, 0.0}, 0.5, 2.0};
    doc.channels.push_back({0, 1, 1.0, 2.5});
    doc.channels.push_back({0, 1, 1.0, std::nullopt});
    doc.operators.push_back({"repair", {{"bad", "good"}}, {1, 1}});
    doc.chains.push_back({{2, true}, true});
    return doc;
}

std::string error_code_of_parse(const std::string& text) {
    try {
        parse_model(text);
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("the minimal document parses into a two-agent handshake") {
    const auto doc = parse_model(kMinimal);
    CHECK(doc.version == 1);
    CHECK(doc.graph.agents == std::vector<AgentId>{"S", "R"});
    REQUIRE(doc.graph.promises.size() == 2);
    CHECK(doc.graph.promises[0].is_offer());
    CHECK(doc.graph.promises[1].is_accept());
    CHECK(bind(doc.graph).size() == 1);
}

TEST_CASE("load errors carry their contract codes") {
    CHECK(error_code_of_parse("{not json") == "ParseError");
    CHECK(error_code_of_parse(R"({"agents": []})") == "ParseError");  // version missing
    CHECK(error_code_of_parse(R"({"version": 99, "agents": []})") == "UnsupportedVersion");
    CHECK(error_code_of_parse(R"({
        "version": 1, "agents": ["S"],
        "promises": [{"promiser": "S", "promisee": "Ghost", "polarity": "+",
                      "body": {"words": ["x"]}}]
    })") == "UnresolvedReference");
    CHECK(error_code_of_parse(R"({
        "version": 1, "agents": ["S", "R"],
        "promises": [{"promiser": "S", "promisee": "R", "polarity": "*",
                      "body": {"words": ["x"]}}]
    })") == "ParseError");
    CHECK(error_code_of_parse(R"({
        "version": 1, "agents": ["S", "R"],
        "promises": [{"promiser": "S", "promisee": "R", "polarity": "+",
                      "body": {"words": []}}]
    })") == "ParseError");
}

TEST_CASE("body words are checked against the promiser's declared vocabulary") {
    const std::string text = R"({
        "version": 1,
        "agents": [{"name": "S", "vocab": "little"}, "R"],
        "vocabularies": [{"id": "little", "symbols": ["ping"]}],
        "promises": [{"promiser": "S", "promisee": "R", "polarity": "+",
                      "body": {"words": ["pong"]}}]
    })";
    CHECK(error_code_of_parse(text) == "UnresolvedReference");
}

TEST_CASE("channels must reference a matched pair") {
    const std::string text = R"({
        "version": 1, "agents": ["S", "R"],
        "promises": [
            {"promiser": "S", "promisee": "R", "polarity": "+", "body": {"words": ["d"]}},
            {"promiser": "R", "promisee": "S", "polarity": "-", "body": {"words": ["d"]}}
        ],
        "channels": [{"offer": 1, "accept": 0, "B": 1.0, "f": 2.5}]
    })";
    CHECK(error_code_of_parse(text) == "UnresolvedReference");
}

TEST_CASE("operator tables must be total over their state space") {
    const std::string text = R"({
        "version": 1, "agents": ["S"],
        "operators": [{"name": "f", "states": ["a", "b"], "map": {"a": "b"}}]
    })";
    CHECK(error_code_of_parse(text) == "UnresolvedReference");
    const std::string outside = R"({
        "version": 1, "agents": ["S"],
        "operators": [{"name": "f", "states": ["a"], "map": {"a": "zzz"}}]
    })";
    CHECK(error_code_of_parse(outside) == "UnresolvedReference");
}

TEST_CASE("the state cap is enforced") {
    std::string text = R"({"version": 1, "agents": ["S"], "operators": [{"name": "big", "states": [)";
    std::string map = "{";
    for (int i = 0; i < 4097; ++i) {
        if (i) {
            text += ",";
            map += ",";
        }
        const std::string s = "\"s" + std::to_string(i) + "\"";
        text += s;
        map += s + ": " + s;
    }
    text += "], \"map\": " + map + "}}]}";
    CHECK(error_code_of_parse(text) == "ParseError");
}

TEST_CASE("emit and parse round-trip exactly") {
    SUBCASE("minimal document") {
        const auto doc = parse_model(kMinimal);
        CHECK(parse_model(emit_model(doc)) == doc);
    }
    SUBCASE("rich document") {
        const auto doc = rich_document();
        CHECK(parse_model(emit_model(doc)) == doc);
    }
    SUBCASE("generated chains") {
        for (std::size_t n : {0, 1, 3}) {
            CHECK(parse_model(emit_model(chain_model({n, false}))) == chain_model({n, false}));
            CHECK(parse_model(emit_model(chain_model({n, true}))) == chain_model({n, true}));
        }
    }
}

TEST_CASE("emitted documents are byte-stable") {
    const auto doc = rich_document();
    CHECK(emit_model(doc) == emit_model(parse_model(emit_model(doc))));
}

TEST_CASE("check passes a generated chain with no errors") {
    const auto doc = chain_model({3, false});
    const auto report = check_model(doc);
    CHECK_FALSE(report.has_errors());
    CHECK(report.verdicts.at("autonomy"));
    CHECK(report.verdicts.at("conditionals_wired"));
    CHECK(report.verdicts.at("continuity"));
    CHECK(report.verdicts.at("no_deadlock"));
    CHECK(report.verdicts.at("chain_pattern"));
    CHECK(report.metrics.at("chain_lines") == 10);
    CHECK(report.metrics.at("chain_cost") == 28);
}

TEST_CASE("check flags the deadlocked remuneration loop with an error") {
    ModelDocument doc;
    doc.graph = graph_of({"S", "F"},
                         {offer("S", "F", body({"goods"}), {body({"payment"})}),
                          offer("F", "S", body({"payment"}), {body({"goods"})}),
                          accept("F", "S", body({"goods"})),
                          accept("S", "F", body({"payment"}))});
    const auto report = check_model(doc);
    CHECK(report.has_errors());
    CHECK_FALSE(report.verdicts.at("no_deadlock"));
    bool found = false;
    for (const auto& f : report.findings)
        if (f.code == "BootstrapDeadlock") found = true;
    CHECK(found);
}

TEST_CASE("check reports inert bindings as warnings, not errors") {
    ModelDocument doc;
    doc.graph = graph_of({"S", "R"}, {offer("S", "R", body({"a"})),
                                      accept("R", "S", body({"z"}))});
    const auto report = check_model(doc);
    CHECK_FALSE(report.has_errors());
    bool inert = false;
    for (const auto& f : report.findings)
        if (f.code == "InertBinding" && f.severity == Severity::Warn) inert = true;
    CHECK(inert);
}

TEST_CASE("check surfaces autonomy violations as error findings") {
    ModelDocument doc;
    doc.graph = make_graph({"A", "B"});
    Promise rogue = offer("A", "B", body({"B", "send"}));
    doc.graph.promises.push_back(rogue);  // bypasses add_promise on purpose
    const auto report = check_model(doc);
    CHECK(report.has_errors());
    CHECK_FALSE(report.verdicts.at("autonomy"));
}

TEST_CASE("check output is byte-identical across runs") {
    const auto doc = chain_model({2, true});
    const auto a = check_model(doc);
    const auto b = check_model(doc);
    CHECK(a.to_text() == b.to_text());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("simulate_model needs channels and honours the seed") {
    const auto chain = chain_model({1, false});
    CHECK_THROWS_WITH_AS(simulate_model(chain, 10, 0, SimMode::Deterministic),
                         doctest::Contains("NoChannels"), Error);

    const auto doc = parse_model(kMinimal);
    ModelDocument with_channel = doc;
    with_channel.channels.push_back({0, 1, 1.0, 2.5});
    const auto a = simulate_model(with_channel, 500, 11, SimMode::Stochastic);
    const auto b = simulate_model(with_channel, 500, 11, SimMode::Stochastic);
    CHECK(a.log.to_tsv() == b.log.to_tsv());
    CHECK(a.report.to_text() == b.report.to_text());
    CHECK(a.report.metrics.at("ch0 missed") == 0);  // faithful rate
    CHECK(a.report.metrics.at("total_missed") == 0);
}

TEST_CASE("audit_chain blesses its own model") {
    const auto doc = chain_model({3, false});
    const auto report = audit_chain(doc, doc.chains.front());
    CHECK(report.verdicts.at("line_count"));
    CHECK(report.verdicts.at("continuity"));
    CHECK(report.verdicts.at("pattern_complete"));
    CHECK(report.metrics.at("cost") == 28);
}

TEST_CASE("proxy_range_report measures the quadratic growth law") {
    const auto report = proxy_range_report(4, 64, false);
    CHECK(report.verdicts.at("growth_quadratic"));
    const double exponent = report.metrics.at("growth_exponent");
    CHECK(exponent >= 1.85);
    CHECK(exponent <= 2.15);
    CHECK(report.metrics.at("cost n=64") == 65 * 129);
}

TEST_CASE("bundled models load, round-trip, and check without errors") {
    const std::filesystem::path dir{PTKIT_MODELS_DIR};
    REQUIRE(std::filesystem::exists(dir));
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        INFO("model: ", entry.path().string());
        const auto doc = load_model(entry.path().string());
        CHECK(parse_model(emit_model(doc)) == doc);
        CHECK_FALSE(check_model(doc).has_errors());
    }
    CHECK(seen >= 4);
}
