#include "adlv/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "adlv/element_io.hpp"
#include "adlv/error.hpp"
#include "adlv/reduction.hpp"
#include "adlv/render.hpp"

namespace adlv {

namespace {

using ojson = nlohmann::ordered_json;

void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f)
    fail("IoError", "cannot write " + path);
}

int resolve_threads(int configured) {
  if (configured > 0)
    return configured;
  if (const char* env = std::getenv("ADLV_THREADS")) {
    int n = std::atoi(env);
    if (n > 0)
      return n;
  }
  return 1;
}

std::string default_format(const std::string& command) {
  if (command == "crosscheck")
    return "csv";
  if (command == "witnesses" || command == "inventory")
    return "json";
  if (command == "render")
    return "svg";
  return "";
}

const char* step_name(StepKind k) {
  switch (k) {
    case StepKind::Up: return "up";
    case StepKind::Level: return "level";
    default: return "down2";
  }
}

ojson witness_json(const RootDatum& rd, const AlcoveWitness& wit) {
  ojson w;
  ojson nodes = ojson::array();
  for (int node : rd.nodes_of(wit.j))
    nodes.push_back(node + 1);
  w["J"] = std::move(nodes);
  w["w"] = print_weyl(rd, wit.w);
  w["strict"] = wit.strict;
  ojson obs = ojson::array();
  for (const Rat& q : wit.obstruction)
    obs.push_back(rat_str(q));
  w["obstruction"] = std::move(obs);
  return w;
}

int run_checked(const CommandConfig& cfg, std::ostream& out) {
  const std::string& cmd = cfg.command;
  if (cmd != "nonempty" && cmd != "witnesses" && cmd != "minlen" &&
      cmd != "crosscheck" && cmd != "inventory" && cmd != "render")
    fail("Usage", "unknown command '" + cmd + "'");
  if (!cfg.format.empty() && cfg.format != default_format(cmd))
    fail("Usage", "format '" + cfg.format + "' is not available for " + cmd);
  if (cfg.group_path.empty())
    fail("Usage", "--group is required");
  if (cfg.max_length < 0)
    fail("Usage", "--maxlen must be nonnegative");

  RootDatum rd = build_root_datum(GroupSpec::from_json_file(cfg.group_path));

  bool needs_x = cmd == "nonempty" || cmd == "witnesses" || cmd == "minlen";
  if (needs_x && cfg.x_expr.empty())
    fail("Usage", "--x is required for " + cmd);

  std::optional<AffineElement> z;
  if (!cfg.twist_expr.empty())
    z = parse_element(rd, cfg.twist_expr);

  AffineElement x = identity_element(rd);
  if (!cfg.x_expr.empty())
    x = parse_element(rd, cfg.x_expr);
  AffineElement b = parse_element(rd, cfg.b_expr.empty() ? "e" : cfg.b_expr);
  // the inner form twisted by z is queried through the quasi-split engine by
  // right-multiplying all inputs with z
  AffineElement xq = z ? compose(x, *z) : x;
  AffineElement bq = z ? compose(b, *z) : b;

  if (cmd == "nonempty") {
    if (cfg.method != "criterion" && cfg.method != "oracle" &&
        cfg.method != "both")
      fail("Usage", "--method must be criterion, oracle or both");
    std::string line;
    bool mismatch = false;
    if (cfg.method == "criterion") {
      line = std::string("criterion=") +
             (nonempty_basic_criterion(xq, bq) ? "true" : "false");
    } else if (cfg.method == "oracle") {
      bool v = z ? reduction_nonempty(x, b, *z) : reduction_nonempty(x, b);
      line = std::string("oracle=") + (v ? "true" : "false");
    } else {
      bool c = nonempty_basic_criterion(xq, bq);
      bool o = z ? reduction_nonempty(x, b, *z) : reduction_nonempty(x, b);
      mismatch = c != o;
      line = std::string("criterion=") + (c ? "true" : "false") +
             " oracle=" + (o ? "true" : "false") +
             (mismatch ? " MISMATCH" : " match");
    }
    emit(cfg.out_path, out, line + "\n");
    return mismatch ? 2 : 0;
  }

  if (cmd == "witnesses") {
    ojson doc;
    doc["x"] = print_element(xq);
    ojson arr = ojson::array();
    for (const AlcoveWitness& wit : alcove_witnesses(xq))
      arr.push_back(witness_json(rd, wit));
    doc["witnesses"] = std::move(arr);
    emit(cfg.out_path, out, doc.dump(2) + "\n");
    return 0;
  }

  if (cmd == "minlen") {
    DescentPath path = descend_to_minimal(xq);
    std::string text =
        "start " + print_element(path.start) + " length=" +
        std::to_string(length(path.start)) + "\n";
    for (const PathEntry& e : path.steps)
      text += std::string(step_name(e.kind)) + " " +
              affine_gen_name(rd, e.gen) + " -> " + print_element(e.element) +
              " length=" + std::to_string(length(e.element)) + "\n";
    text += "minimal " + print_element(path.minimal) +
            " length=" + std::to_string(length(path.minimal)) +
            " bfs_nodes=" + std::to_string(path.bfs_nodes) + "\n";
    emit(cfg.out_path, out, text);
    return 0;
  }

  if (cmd == "crosscheck") {
    std::vector<AffineElement> bs;
    if (cfg.b_expr.empty())
      bs = omega_elements(rd);
    else
      bs.push_back(b);
    CrosscheckReport rep =
        crosscheck(rd, cfg.max_length, bs, resolve_threads(cfg.threads), z);
    emit(cfg.out_path, out, rep.csv());
    out << rep.summary_json() << "\n";
    return rep.disagree ? 2 : 0;
  }

  if (cmd == "inventory") {
    ojson arr = ojson::array();
    for (const InventoryEntry& entry : class_inventory(rd, cfg.max_length)) {
      ojson e;
      ojson nu = ojson::array();
      for (const Rat& q : entry.invariants.nu_bar)
        nu.push_back(rat_str(q));
      e["nu_bar"] = std::move(nu);
      ojson kap = ojson::array();
      for (Int v : entry.invariants.kappa)
        kap.push_back((long)v);
      e["kappa"] = std::move(kap);
      e["basic"] = entry.invariants.basic();
      e["witness"] = print_element(entry.witness);
      e["length"] = entry.length;
      arr.push_back(std::move(e));
    }
    emit(cfg.out_path, out, arr.dump(2) + "\n");
    return 0;
  }

  // render
  emit(cfg.out_path, out, render_apartment(rd, bq, cfg.max_length));
  return 0;
}

}  // namespace

int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(cfg, out);
  } catch (const Error& e) {
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error[Internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace adlv
