/// \file campaign.hpp
/// \brief Reproducible verification campaigns: seeded scenarios over the
///        library with JSON/CSV reports and a strict exit-status contract.
#pragma once

#include <string>

namespace hs2 {

/// Exit statuses shared by the campaign runner and the CLI.
enum class CampaignStatus : int {
    Pass = 0,
    CheckFailed = 1,
    ConfigError = 2,
};

struct CampaignOutcome {
    CampaignStatus status = CampaignStatus::ConfigError;
    std::string summary_json;  ///< full report, embeds the resolved config
    std::string csv;           ///< scenario table
    std::string message;       ///< parse/usage error text when status == ConfigError
};

/// Runs one campaign described by a JSON config. Recognized keys:
///   scenario: convexity | measure | compare | oscillation | taylor |
///             appendix | weak-convergence
///   n, seed, resolution, samples, field, domain {type: box|ball, ...},
///   out (report path prefix), plus scenario-specific parameters.
/// Identical configs produce byte-identical reports. When `out` is set the
/// summary is written to <out>.json and the table to <out>.csv.
CampaignOutcome run_campaign(const std::string& config_json);

}  // namespace hs2
