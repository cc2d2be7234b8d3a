#pragma once

#include <map>
#include <string>
#include <vector>

#include "kkcli/documents.hpp"

namespace kk::cli {

/// Invalid flags or parameters; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOptions {
  std::string ring_path;
  std::string field;  ///< overrides the ring document's field
  int jobs = 1;
  int max_hom = -1;
  int max_int = -1;
  int bound = -1;
  bool multigraded = false;
  bool timing = false;
  std::string what;
  std::string family;
  int n = -1;
  std::vector<std::string> variables;
  std::vector<std::string> quadrics;
};

struct CommandResult {
  ResultDocument doc;
  int exit_code = 0;  ///< 0 decided, 1 identity violation or failed certificate
};

CommandResult cmd_homology(const CommandOptions& o);
CommandResult cmd_check(const CommandOptions& o);
CommandResult cmd_family(const CommandOptions& o);

const std::vector<std::string>& check_kinds();
/// Older names accepted by --what: theorem-a, theorem-b, prop-2-5.
const std::map<std::string, std::string>& check_aliases();
std::string canonical_check_kind(const std::string& what);
const std::vector<std::string>& family_kinds();

}  // namespace kk::cli
