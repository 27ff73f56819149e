#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "config.hpp"
#include "snewton/analysis.hpp"
#include "snewton/propagator.hpp"
#include "snewton/units.hpp"

namespace snsim {

struct CampaignSummary {
  Mode mode = Mode::single;
  std::vector<std::filesystem::path> files;  // relative to outdir, in write order
  std::vector<snewton::RunRecord> runs;      // empty in feasibility mode
  std::optional<snewton::ScanTable> scan;    // sweep mode only
  std::vector<snewton::units::FeasibilityReport> feasibility;
};

/// One simulation of the configured lattice with `setup` overriding the
/// config's own setup block.
snewton::RunRecord simulate(const RunConfig& config, const snewton::SetupParams& setup,
                            std::vector<double> snapshot_times);

/// Validates `config`, runs the campaign and writes every artifact under
/// config.outdir. Progress lines go to `log` when given.
CampaignSummary run_campaign(const RunConfig& config, std::ostream* log = nullptr);

/// Maps an exception category to the process exit status.
int exit_code_for(const std::exception& error) noexcept;

}  // namespace snsim
