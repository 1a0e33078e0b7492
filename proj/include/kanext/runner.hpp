#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kanext/report.hpp"
#include "kanext/spec_file.hpp"

namespace kanext {

struct RunOptions {
  std::uint64_t seed = 20240611;
  /// Guard on generated sizes: model carriers, fixture sets, random sets.
  std::size_t max_size = 3;
  /// Commands run at the same time; records keep spec order regardless.
  std::size_t jobs = 1;
};

/// Runs one command. Runtime errors become Error records, never exceptions.
Record run_command(const SpecFile& spec, const Command& cmd, const RunOptions& options);

/// Every command of the file in spec order.
Report run_spec(const SpecFile& spec, const std::string& source, const RunOptions& options);

/// The tags `check <tag>` accepts.
const std::vector<std::string>& check_tags();

/// A check over the shipped fixtures, for `check <tag>` without a spec file.
Record run_suite(const std::string& tag, const RunOptions& options);

}  // namespace kanext
