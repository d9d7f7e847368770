#include <iostream>

#include <CLI11.hpp>

#include "adlv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Affine Deligne-Lusztig nonemptiness: witness criterion vs "
               "reduction oracle"};
  adlv::CommandConfig cfg;
  app.add_option("command", cfg.command,
                 "nonempty | witnesses | minlen | crosscheck | inventory | "
                 "render")
      ->required();
  app.add_option("--group", cfg.group_path, "group spec JSON file")->required();
  app.add_option("--x", cfg.x_expr, "element expression");
  app.add_option("--b", cfg.b_expr,
                 "class representative (crosscheck default: all of Omega)");
  app.add_option("--method", cfg.method, "criterion | oracle | both");
  app.add_option("--maxlen", cfg.max_length, "length bound for scans");
  app.add_option("--out", cfg.out_path, "output file (default: stdout)");
  app.add_option("--format", cfg.format, "csv | json | svg");
  app.add_option("--twist", cfg.twist_expr,
                 "length-zero inner-form twist applied to all inputs");
  app.add_option("--threads", cfg.threads,
                 "worker count (default: ADLV_THREADS or 1)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);  // --help
    std::cerr << "error[Usage]: " << e.what() << "\n";
    return 1;
  }
  return adlv::run_command(cfg, std::cout, std::cerr);
}
