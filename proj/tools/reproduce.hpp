#ifndef RECOSYNC_TOOLS_REPRODUCE_HPP
#define RECOSYNC_TOOLS_REPRODUCE_HPP

#include <filesystem>
#include <string>

namespace recosync::tools {

/// End-to-end reproduction of the bundled case studies against their
/// reference numbers. Returns a process exit code (0 = all hard checks pass).
int reproduce_small_factory(const std::filesystem::path& fixtures, std::size_t exact_cutoff);
int reproduce_fms(const std::filesystem::path& fixtures, const std::string& mode,
                  std::size_t exact_cutoff);

} // namespace recosync::tools

#endif
