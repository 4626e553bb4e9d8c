#ifndef KMR_TOOLS_CLI_HPP
#define KMR_TOOLS_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kmr/splitting.hpp"

namespace kmr::cli {

enum ExitCode : int { kOk = 0, kResiduals = 1, kInsufficientWindow = 2, kUsage = 64 };

struct RunConfig {
  std::string algebra = "A1~";
  int cutoff = 6;
  int grade = 2;               // generator window |n| <= grade
  std::optional<int> gap;      // K for the widening-gap audit
  int depth = -1;              // polynomial degree cap, -1 for none
  bool regulator = false;
  std::string gauge = "cs";    // cs | none
  bool json = false;
  bool unicode = false;
  bool zero_phi = false;
  std::vector<std::string> generators;
  std::vector<std::string> pairs;  // "x:y"
  bool default_pairs = true;
  int terms = 12;
  int samples = 20;
  unsigned seed = 7;
};

struct Result {
  int code = kOk;
  std::string out;
  std::string err;
};

// one per subcommand; output is deterministic for a fixed config
Result expand_rho(const RunConfig& c);
Result expand_theta(const RunConfig& c);
Result solve_phi(const RunConfig& c);
Result verify_hom(const RunConfig& c);
Result c_coeffs(const RunConfig& c);
Result zeta_check(const RunConfig& c);
Result stabilize_check(const RunConfig& c);

Result dispatch(const std::string& subcommand, const RunConfig& c);

// "H,1:H,-1" -> the two generator strings
std::pair<std::string, std::string> split_pair(const std::string& s);

// full command line, including golden comparison and the output directory override
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kmr::cli

#endif
