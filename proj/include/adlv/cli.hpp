#pragma once

#include <iosfwd>
#include <string>

namespace adlv {

struct CommandConfig {
  std::string group_path;
  std::string command;      // nonempty | witnesses | minlen | crosscheck |
                            // inventory | render
  std::string x_expr;
  std::string b_expr;       // empty: "e" for single queries, Omega for scans
  std::string method = "both";  // criterion | oracle | both
  int max_length = 0;
  std::string out_path;     // empty = standard output
  std::string format;       // empty = command default (csv | json | svg)
  std::string twist_expr;   // inner-form twist applied before all computations
  int threads = 0;          // 0 = ADLV_THREADS environment variable, else 1
};

// Exit code 0 on success, 1 on usage or module errors (reported to err as
// "error[Code]: message"), 2 when criterion and oracle disagree.
int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace adlv
