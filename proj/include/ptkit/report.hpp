#pragma once

// Aggregated analysis reports: findings, metrics, and verdicts with a
// deterministic rendering in text and JSON.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ptkit/dynamics.hpp"
#include "ptkit/model.hpp"
#include "ptkit/promise.hpp"

namespace ptkit {

struct Report {
    std::string title;
    std::vector<Finding> findings;          // kept sorted, see sort_findings
    std::map<std::string, double> metrics;
    std::map<std::string, bool> verdicts;

    bool has_errors() const;
    void add(Finding f);
    std::string to_text() const;
    std::string to_json() const;
};

// Runs the full static analysis battery over a document: promise re-add
// (autonomy), bindings and overlaps, conditional wiring, impositions,
// translation-matrix classification, continuity, bootstrap/deadlock,
// fragility of conditional aggregations, and declared chain audits.
Report check_model(const ModelDocument& doc);

struct SimulationResult {
    EventLog log;
    Report report;
};

// Drives dynamics::run over the document's channels and summarizes final
// potentials, sampling rates, event counts, kinetic cost, and observed
// outcome entropy per channel. Errors: NoChannels, InertChannel.
SimulationResult simulate_model(const ModelDocument& doc,
                                std::uint64_t horizon,
                                std::uint64_t seed,
                                SimMode mode);

// Audit of one generated chain: line count, cost, continuity and
// self-completeness verdicts.
Report audit_chain(const ModelDocument& doc, const ChainSpecEntry& entry);

// Cost-growth audit over a doubling range of proxy counts.
Report proxy_range_report(std::size_t lo, std::size_t hi, bool with_direct_trust);

} // namespace ptkit
