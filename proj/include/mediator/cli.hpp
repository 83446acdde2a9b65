// cli.hpp -- subcommand entry points shared by the binary and the tests.
//
// Exit code contract: 0 success, 1 domain failure (invalid model,
// incompatible protocols, failed verification), 2 usage or input error.

#pragma once

#include "mediator/decompose.hpp"
#include "mediator/mismatch.hpp"
#include "mediator/verify.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace mediator {

inline constexpr const char* tool_version = "0.1.0";

struct RunConfig {
    DecomposeConfig decompose;
    AlignConfig align;
    VerifyConfig verify;
    std::uint64_t seed = 0;
    std::vector<std::size_t> script; // simulate only
    std::filesystem::path out = "out";
};

int cmd_validate(const std::vector<std::filesystem::path>& files,
                 std::ostream& out, std::ostream& err);

int cmd_decompose(const std::filesystem::path& lts_path, const RunConfig& cfg,
                  std::ostream& out, std::ostream& err);

int cmd_match(const std::filesystem::path& left_path,
              const std::filesystem::path& right_path,
              const std::filesystem::path& map_path, const RunConfig& cfg,
              std::ostream& out, std::ostream& err);

int cmd_synthesize(const std::filesystem::path& left_path,
                   const std::filesystem::path& right_path,
                   const std::filesystem::path& map_path, const RunConfig& cfg,
                   std::ostream& out, std::ostream& err);

int cmd_verify(const std::filesystem::path& left_path,
               const std::filesystem::path& mediator_path,
               const std::filesystem::path& right_path, const RunConfig& cfg,
               std::ostream& out, std::ostream& err);

int cmd_simulate(const std::filesystem::path& left_path,
                 const std::filesystem::path& mediator_path,
                 const std::filesystem::path& right_path, const RunConfig& cfg,
                 std::ostream& out, std::ostream& err);

int cmd_export_dot(const std::filesystem::path& lts_path, const RunConfig& cfg,
                   std::ostream& out, std::ostream& err);

} // namespace mediator
