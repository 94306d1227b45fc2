#pragma once

#include "balpair/bpa.hpp"
#include "balpair/verdict.hpp"

#include <string>

namespace balpair {

inline constexpr const char* kToolVersion = "0.1.0";

struct RenderOptions {
    /// Cells with more pairs list only a sample.
    std::size_t pair_list_threshold = 1000;
    std::size_t pair_sample = 20;
    /// Timings make output vary between runs; off by default.
    bool timings = false;
    int digits = 12;
};

/// Canonical JSON (sorted keys, two-space indent, trailing newline). Exact
/// scalars appear as {"coeffs": [...], "approx": "..."} over the basis
/// 1, t, t^2, ... of the Perron field; rationals are "p/q" strings.
std::string render_json(const AnalysisReport& report, const RenderOptions& options = {});

/// Pair graph in DOT: labels "top/bottom", coincidences as double circles,
/// edge labels are multiplicities.
std::string render_dot(const Substitution& phi, const PairSet& pairs, const PairGraph& graph);

/// Human-readable summary for the terminal.
std::string render_text(const AnalysisReport& report);

}  // namespace balpair
