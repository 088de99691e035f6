#pragma once

// The self-contained JSON model document: agents, vocabularies, translation
// matrices, promises, trust configuration, channels, operators, and chain
// specs. One file holds everything an analysis needs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptkit/composition.hpp"
#include "ptkit/convergence.hpp"
#include "ptkit/dynamics.hpp"
#include "ptkit/language.hpp"
#include "ptkit/promise.hpp"
#include "ptkit/trust.hpp"

namespace ptkit {

inline constexpr int kModelVersion = 1;

struct ChainSpecEntry {
    ChainSpec spec;
    bool minimal_trust = false;  // audit the complete-graph requirement too

    bool operator==(const ChainSpecEntry&) const = default;
};

struct ModelDocument {
    int version = kModelVersion;
    PromiseGraph graph;
    std::map<AgentId, std::string> agent_vocabs;  // declared vocabulary per agent
    std::vector<Vocabulary> vocabularies;
    std::vector<TranslationMatrix> matrices;
    TrustConfig trust_default;
    std::map<AgentId, TrustConfig> trust_agents;
    std::vector<ChannelSpec> channels;
    std::vector<Operator> operators;
    std::vector<ChainSpecEntry> chains;

    const Vocabulary* find_vocabulary(const std::string& id) const;
    const TranslationMatrix* find_matrix(const std::string& from, const std::string& to) const;
    const Operator* find_operator(const std::string& name) const;
    TrustConfig trust_for(const AgentId& agent) const;

    bool operator==(const ModelDocument&) const = default;
};

// Parses and cross-reference-validates a document. Errors: ParseError (with
// byte position), UnresolvedReference, UnsupportedVersion.
ModelDocument parse_model(const std::string& json_text, const std::string& origin = "<string>");
ModelDocument load_model(const std::string& path);

// Canonical serialization: fixed key order, two-space indent, defaults
// omitted. load(emit(doc)) == doc.
std::string emit_model(const ModelDocument& doc);

// Wraps a generated chain as a complete model document.
ModelDocument chain_model(const ChainSpec& spec, bool minimal_trust = false);

} // namespace ptkit
