#ifndef WFA_REPORT_IO_HPP
#define WFA_REPORT_IO_HPP

#include <string>

#include "wfa/analysis.hpp"

namespace wfa {

/// Deterministic JSON rendering (keys sorted, no timestamps).
std::string report_to_json(const AnalysisReport& report);

/// Inverse of report_to_json. Throws std::runtime_error on malformed input.
AnalysisReport report_from_json(const std::string& text);

/// Plain-text rendering: tagging findings, one block per rule step with
/// the per-atom levels and derivations, then the conclusion.
std::string report_to_text(const AnalysisReport& report);

}  // namespace wfa

#endif  // WFA_REPORT_IO_HPP
