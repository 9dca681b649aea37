#pragma once

#include "blockcerts/bytes.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace blockcerts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

struct WorkspaceConfig {
    std::filesystem::path ledger_path = "ledger.jsonl";
    std::filesystem::path registry_root = "hosted";
    std::optional<std::filesystem::path> trust_store_path;
    std::optional<EpochSeconds> clock_override;

    EpochSeconds now() const;
};

/// Reads {"ledger", "registry", "trustStore"?, "clock"?}; relative paths are
/// taken relative to the config file's directory.
WorkspaceConfig load_config(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success/valid, 1 invalid verification, 2 usage or I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace blockcerts::cli
