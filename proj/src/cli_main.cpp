// vkrh: command-line surface over the vankamp shared library.
//
// Every subcommand assembles one JSON configuration object, hands it to the
// corresponding library entry point and prints the returned document. The
// library's return code is the process exit code: 0 success/termination,
// 2 budget exhaustion, 1 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vankamp.h"

namespace {

using nlohmann::json;

struct CliError {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Options shared by the subcommands; std::optional distinguishes "given"
// from defaulted so the config only carries what the user set.
struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  int jobs = 1;
  std::optional<int> cap;

  std::optional<std::string> pack_mode;
  std::optional<std::string> K, B, pack_area_cap, proper_bound;

  std::optional<long long> max_area, max_complexity, max_boundary_length, ball_radius_cap;

  std::optional<long long> max_rounds, max_words_per_round, relator_length_cap, radius_cap;
  std::optional<std::string> k_stride;

  std::optional<long long> max_steps, step_quantum, max_tuple_n, max_word_length;
  std::optional<long long> max_moves, max_relator_length, max_generators;
  std::optional<long long> max_conjugate_factors, max_conjugator_length;
  std::vector<std::string> class_files;
  std::vector<std::string> class_cmd;

  std::optional<std::string> word;
  int parabolic = 0;
  std::optional<std::string> diagram_path, state_path, checkpoint_path;
  bool incidence = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "presentation file")->required();
  cmd->add_option("-o,--output", o.output, "write the document here instead of stdout");
  cmd->add_option("--format", o.format, "json | human")
      ->check(CLI::IsMember({"json", "human"}));
  cmd->add_option("--jobs", o.jobs, "parallelism degree (runs are currently serial)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cap", o.cap, "parabolic geodesic length guard (default 64)");
}

void add_pack(CLI::App* cmd, Options& o) {
  cmd->add_option("--pack", o.pack_mode, "constant pack mode")
      ->check(CLI::IsMember({"paper", "scaled"}));
  cmd->add_option("--K", o.K, "hyperbolicity constant K (decimal, arbitrary size)");
  cmd->add_option("--B", o.B, "scaled pack: linear isoperimetric bound B");
  cmd->add_option("--area-cap", o.pack_area_cap, "scaled pack: enumeration area cap");
  cmd->add_option("--proper-bound", o.proper_bound, "scaled pack: properness radius bound");
}

void add_caps(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-area", o.max_area, "corpus cap: diagram area");
  cmd->add_option("--max-complexity", o.max_complexity, "corpus cap: edge complexity");
  cmd->add_option("--max-boundary-length", o.max_boundary_length, "corpus cap: boundary length");
  cmd->add_option("--ball-radius-cap", o.ball_radius_cap, "corpus cap: oracle ball radius");
}

void add_budget(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-rounds", o.max_rounds, "detection round budget");
  cmd->add_option("--max-words-per-round", o.max_words_per_round, "word budget per round");
  cmd->add_option("--relator-length-cap", o.relator_length_cap,
                  "parabolic relator enumeration cap");
  cmd->add_option("--k-stride", o.k_stride, "K step between rounds (decimal)");
  cmd->add_option("--radius-cap", o.radius_cap, "properness check radius cap");
}

void add_search(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-steps", o.max_steps, "search step budget");
  cmd->add_option("--step-quantum", o.step_quantum, "detection rounds per track step");
  cmd->add_option("--max-tuple-n", o.max_tuple_n, "largest candidate tuple size");
  cmd->add_option("--max-word-length", o.max_word_length, "longest candidate tuple word");
  cmd->add_option("--max-moves", o.max_moves, "Tietze path length bound");
  cmd->add_option("--max-relator-length", o.max_relator_length, "Tietze relator length bound");
  cmd->add_option("--max-generators", o.max_generators, "Tietze generator count bound");
  cmd->add_option("--max-conjugate-factors", o.max_conjugate_factors,
                  "relator-add certificate: conjugate factor bound");
  cmd->add_option("--max-conjugator-length", o.max_conjugator_length,
                  "relator-add certificate: conjugator length bound");
  cmd->add_option("--class-file", o.class_files, "presentation file of a class member (repeat)");
  cmd->add_option("--class-cmd", o.class_cmd, "class enumerator subprocess argv")
      ->expected(-1);
}

json big(const std::string& v) { return json(v); }

json build_config(const Options& o, bool want_search) {
  json cfg = json::object();
  bool pack_fields = o.K || o.B || o.pack_area_cap || o.proper_bound;
  if (o.pack_mode) {
    json pack{{"mode", *o.pack_mode}};
    if (*o.pack_mode == "paper") {
      if (!o.K) throw CliError{"paper pack needs --K"};
      if (o.B || o.pack_area_cap || o.proper_bound)
        throw CliError{"paper mode forbids cap overrides (--B/--area-cap/--proper-bound)"};
      pack["K"] = big(*o.K);
    } else {
      if (!(o.K && o.B && o.pack_area_cap && o.proper_bound))
        throw CliError{"scaled pack needs --K, --B, --area-cap and --proper-bound"};
      pack["K"] = big(*o.K);
      pack["B"] = big(*o.B);
      pack["area_cap"] = big(*o.pack_area_cap);
      pack["proper_bound"] = big(*o.proper_bound);
    }
    cfg["pack"] = std::move(pack);
  } else if (pack_fields) {
    throw CliError{"pack constants given without --pack paper|scaled"};
  }

  bool caps_fields = o.max_area || o.max_complexity || o.max_boundary_length || o.ball_radius_cap;
  if (caps_fields) {
    if (!(o.max_area && o.max_complexity && o.max_boundary_length))
      throw CliError{"caps need --max-area, --max-complexity and --max-boundary-length"};
    json caps{{"max_area", *o.max_area},
              {"max_complexity", *o.max_complexity},
              {"max_boundary_length", *o.max_boundary_length}};
    if (o.ball_radius_cap) caps["ball_radius_cap"] = *o.ball_radius_cap;
    cfg["caps"] = std::move(caps);
  }

  json budget = json::object();
  if (o.max_rounds) budget["max_rounds"] = *o.max_rounds;
  if (o.max_words_per_round) budget["max_words_per_round"] = *o.max_words_per_round;
  if (o.relator_length_cap) budget["relator_length_cap"] = *o.relator_length_cap;
  if (o.k_stride) budget["k_stride"] = big(*o.k_stride);
  if (o.radius_cap) budget["radius_cap"] = *o.radius_cap;
  if (!budget.empty()) cfg["budget"] = std::move(budget);

  if (want_search) {
    if (!(o.max_steps && o.max_moves && o.max_relator_length && o.max_generators))
      throw CliError{
          "search needs --max-steps, --max-moves, --max-relator-length and --max-generators"};
    json tietze{{"max_moves", *o.max_moves},
                {"max_relator_length", *o.max_relator_length},
                {"max_generators", *o.max_generators}};
    if (o.max_conjugate_factors) tietze["max_conjugate_factors"] = *o.max_conjugate_factors;
    if (o.max_conjugator_length) tietze["max_conjugator_length"] = *o.max_conjugator_length;
    json search{{"max_steps", *o.max_steps}, {"tietze", std::move(tietze)}};
    if (o.step_quantum) search["step_quantum"] = *o.step_quantum;
    if (o.max_tuple_n) search["max_tuple_n"] = *o.max_tuple_n;
    if (o.max_word_length) search["max_word_length"] = *o.max_word_length;
    if (!o.class_files.empty() && !o.class_cmd.empty())
      throw CliError{"--class-file and --class-cmd are mutually exclusive"};
    if (!o.class_files.empty()) {
      json list = json::array();
      for (const std::string& path : o.class_files) list.push_back(slurp(path));
      search["class"] = json{{"list", std::move(list)}};
    } else if (!o.class_cmd.empty()) {
      search["class"] = json{{"cmd", o.class_cmd}};
    } else {
      throw CliError{"search needs --class-file (repeatable) or --class-cmd"};
    }
    cfg["search"] = std::move(search);
  }

  if (o.cap) cfg["cap"] = *o.cap;
  if (o.jobs != 1) cfg["jobs"] = o.jobs;
  return cfg;
}

void human_summary(std::ostream& os, const json& doc) {
  const std::string command = doc.value("command", "?");
  const json& r = doc.contains("report") ? doc.at("report") : json::object();
  os << command << ":";
  if (doc.value("budget_exhausted", false)) os << " budget exhausted";
  os << "\n";
  auto verdict = [&](const json& p) {
    if (p.value("properness_withheld", false)) return std::string("withheld");
    if (!p.contains("proper")) return std::string("undecided");
    return std::string(p.at("proper").get<bool>() ? "proper" : "improper");
  };
  if (command == "detect") {
    os << "  terminated: " << (r.value("terminated", false) ? "yes" : "no")
       << "  rounds: " << r.value("rounds_run", 0)
       << "  words checked: " << r.value("words_checked", 0) << "\n";
    int i = 0;
    for (const json& p : r.value("parabolics", json::array()))
      os << "  parabolic " << ++i << ": " << verdict(p) << "\n";
    for (const json& f : r.value("failures", json::array()))
      os << "  failed round at K=" << f.value("K", std::string("?")) << " witness "
         << f.value("witness", std::string("?")) << " (area " << f.value("witness_area", 0)
         << ", length " << f.value("witness_length", 0) << ")\n";
  } else if (command == "area") {
    if (r.value("exceeds_caps", false))
      os << "  no filling within the caps\n";
    else
      os << "  area: " << r.value("area", -1) << "\n";
  } else if (command == "enum") {
    os << "  diagrams: " << r.value("count", 0) << "\n";
  } else if (command == "fill") {
    os << "  area: " << r.value("area", -1) << "  boundary: "
       << r.value("boundary", std::string()) << "\n";
  } else if (command == "surgery") {
    os << "  clusters: " << r.value("clusters", 0) << "  pieces: " << r.value("pieces", 0)
       << "  arcs: " << r.value("arcs", 0) << "\n";
    for (const json& c : r.value("candidates", json::array()))
      os << "  candidate (" << (c.value("from_cluster", false) ? "cluster " : "piece ")
         << c.value("index", -1) << "): area " << c.value("area", 0) << " boundary "
         << c.value("boundary", std::string()) << "\n";
  } else if (command == "parabolics") {
    int i = 0;
    for (const json& p : r.value("parabolics", json::array())) {
      os << "  parabolic " << ++i << " (" << p.value("relators", 0) << " relators)";
      if (p.contains("proper") || p.contains("properness_withheld"))
        os << ": " << verdict(p);
      os << "\n";
    }
  } else if (command == "search") {
    os << "  terminated: " << (r.value("terminated", false) ? "yes" : "no")
       << "  steps: " << r.value("steps", 0)
       << "  matches: " << r.value("matches", json::array()).size() << "\n";
  } else if (command == "check") {
    os << "  diagrams: " << r.value("diagrams", 0)
       << "  violations: " << r.value("violations", json::array()).size() << "\n";
    for (const json& v : r.value("violations", json::array())) os << "  " << v << "\n";
  }
}

int emit(const Options& o, int code, char* out) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) throw CliError{"cannot write " + o.output};
    os = &file;
  }
  if (out != nullptr) {
    if (o.format == "human" && out[0] == '{')
      human_summary(*os, json::parse(out));
    else
      *os << out;
    rh_string_free(out);
  }
  return code;
}

int run(const Options& o, const std::string& command) {
  std::string text = slurp(o.input);
  rh_session* s = rh_open(text.c_str());
  if (s == nullptr) throw CliError{rh_last_error(nullptr)};
  struct Closer {
    rh_session* s;
    ~Closer() { rh_close(s); }
  } closer{s};

  json cfg = build_config(o, command == "search");
  std::string cfg_text = cfg.dump();
  char* out = nullptr;
  int code = RH_ERROR;
  if (command == "detect") {
    code = rh_detect(s, cfg_text.c_str(), &out);
  } else if (command == "area") {
    code = rh_area(s, o.word->c_str(), cfg_text.c_str(), &out);
  } else if (command == "enum") {
    std::string state;
    if (o.state_path) state = slurp(*o.state_path);
    code = rh_enumerate(s, cfg_text.c_str(), o.state_path ? state.c_str() : nullptr, &out);
  } else if (command == "fill") {
    code = rh_fill(s, o.parabolic, o.word->c_str(), cfg_text.c_str(), &out);
  } else if (command == "surgery") {
    code = rh_surgery(s, slurp(*o.diagram_path).c_str(), cfg_text.c_str(), &out);
  } else if (command == "parabolics") {
    code = rh_parabolics(s, cfg_text.c_str(), &out);
  } else if (command == "search") {
    std::string ckpt;
    if (o.checkpoint_path) ckpt = slurp(*o.checkpoint_path);
    code = rh_search(s, cfg_text.c_str(), o.checkpoint_path ? ckpt.c_str() : nullptr, &out);
  } else if (command == "render") {
    code = rh_render(s, slurp(*o.diagram_path).c_str(), o.incidence ? 1 : 0, &out);
  } else if (command == "check") {
    code = rh_check(s, cfg_text.c_str(), &out);
  }
  if (code == RH_ERROR) throw CliError{rh_last_error(s)};
  return emit(o, code, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"van Kampen diagram toolkit over relative presentations"};
  app.require_subcommand(1);
  Options o;
  std::string command;

  CLI::App* detect = app.add_subcommand("detect", "relative hyperbolicity detection loop");
  add_common(detect, o);
  add_pack(detect, o);
  add_budget(detect, o);
  detect->callback([&] { command = "detect"; });

  CLI::App* area = app.add_subcommand("area", "exact minimal filling area of a word");
  add_common(area, o);
  add_caps(area, o);
  area->add_option("word", o.word, "word in the hat-letter syntax")->required();
  area->callback([&] { command = "area"; });

  CLI::App* enumc = app.add_subcommand("enum", "thick diagram corpus dump");
  add_common(enumc, o);
  add_caps(enumc, o);
  enumc->add_option("--state", o.state_path, "resume from this checkpoint file");
  enumc->callback([&] { command = "enum"; });

  CLI::App* fill = app.add_subcommand("fill", "standard filling of a parabolic word");
  add_common(fill, o);
  fill->add_option("--parabolic", o.parabolic, "1-based parabolic index")->required();
  fill->add_option("word", o.word, "word of parabolic letters")->required();
  fill->callback([&] { command = "fill"; });

  CLI::App* surgery = app.add_subcommand("surgery", "surgery reduction candidates");
  add_common(surgery, o);
  add_caps(surgery, o);
  surgery->add_option("--diagram", o.diagram_path, "serialized diagram file")->required();
  surgery->callback([&] { command = "surgery"; });

  CLI::App* parabolics = app.add_subcommand("parabolics", "parabolic subgroup presentations");
  add_common(parabolics, o);
  add_pack(parabolics, o);
  add_budget(parabolics, o);
  parabolics->callback([&] { command = "parabolics"; });

  CLI::App* search = app.add_subcommand("search", "parabolic-class presentation search");
  add_common(search, o);
  add_pack(search, o);
  add_budget(search, o);
  add_search(search, o);
  search->add_option("--checkpoint", o.checkpoint_path, "resume from this checkpoint file");
  search->callback([&] { command = "search"; });

  CLI::App* render = app.add_subcommand("render", "DOT export of a serialized diagram");
  add_common(render, o);
  render->add_option("--diagram", o.diagram_path, "serialized diagram file")->required();
  render->add_flag("--incidence", o.incidence, "render the piece incidence graph");
  render->callback([&] { command = "render"; });

  CLI::App* check = app.add_subcommand("check", "invariant suite over an enumerated corpus");
  add_common(check, o);
  add_caps(check, o);
  check->callback([&] { command = "check"; });

  CLI11_PARSE(app, argc, argv);

  try {
    return run(o, command);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
