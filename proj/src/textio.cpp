#include "vankamp/textio.hpp"

#include <fstream>
#include <sstream>

#include "vankamp/subprocess.hpp"

namespace vk {

using nlohmann::json;

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

[[noreturn]] void fail_line(int lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

PresentationFile parse_presentation_text(const std::string& text) {
  PresentationFile f;
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto toks = tokenize(line);
      if (!toks.empty()) lines.emplace_back(no, std::move(toks));
    }
  }
  // First pass: the alphabet, so that later passes can resolve symbols in
  // any line order.
  for (const auto& [no, toks] : lines) {
    if (toks[0] == "gen") {
      if (toks.size() < 2) fail_line(no, "gen expects at least one name");
      for (size_t i = 1; i < toks.size(); ++i) {
        try {
          f.presentation.alphabet.add_generator(toks[i], false);
        } catch (const ParseError& e) {
          fail_line(no, e.what());
        }
      }
    } else if (toks[0] == "invol") {
      if (toks.size() < 2) fail_line(no, "invol expects at least one name");
      for (size_t i = 1; i < toks.size(); ++i) {
        try {
          f.presentation.alphabet.add_generator(toks[i], true);
        } catch (const ParseError& e) {
          fail_line(no, e.what());
        }
      }
    }
  }
  const Alphabet& a = f.presentation.alphabet;
  bool oracle_seen = false;
  for (const auto& [no, toks] : lines) {
    if (toks[0] == "gen" || toks[0] == "invol") continue;
    if (toks[0] == "rel") {
      std::vector<Sym> syms;
      try {
        for (size_t i = 1; i < toks.size(); ++i) append_symbol_token(a, toks[i], syms);
      } catch (const ParseError& e) {
        fail_line(no, e.what());
      }
      Word r = cyclic_reduce(a, Word(std::move(syms)));
      if (r.empty()) fail_line(no, "relator reduces to the empty word");
      f.presentation.relators.push_back(std::move(r));
    } else if (toks[0] == "par") {
      size_t i = 1;
      // optional label token, e.g. "P1:" (a bare ":" is also accepted)
      if (i < toks.size() && toks[i].back() == ':') ++i;
      if (i >= toks.size()) fail_line(no, "par expects at least one symbol");
      std::vector<Sym> sub;
      for (; i < toks.size(); ++i) {
        auto s = a.find(toks[i]);
        if (!s) fail_line(no, "unknown symbol: " + toks[i]);
        sub.push_back(*s);
        sub.push_back(a.inverse(*s));
      }
      std::sort(sub.begin(), sub.end());
      sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
      f.parabolics.push_back(std::move(sub));
    } else if (toks[0] == "oracle") {
      if (oracle_seen) fail_line(no, "duplicate oracle line");
      oracle_seen = true;
      if (toks.size() < 2) fail_line(no, "oracle expects a kind");
      if (toks[1] == "free" && toks.size() == 2) {
        f.oracle_kind = PresentationFile::OracleKind::Free;
      } else if (toks[1] == "abelian" && toks.size() == 2) {
        f.oracle_kind = PresentationFile::OracleKind::Abelian;
      } else if (toks[1] == "table" && toks.size() == 3) {
        f.oracle_kind = PresentationFile::OracleKind::Table;
        f.table_path = toks[2];
      } else if (toks[1] == "cmd" && toks.size() >= 3) {
        f.oracle_kind = PresentationFile::OracleKind::Command;
        f.command.assign(toks.begin() + 2, toks.end());
      } else {
        fail_line(no, "oracle kind must be free | abelian | table <path> | cmd <argv...>");
      }
    } else {
      fail_line(no, "unknown directive: " + toks[0]);
    }
  }
  f.presentation.validate();
  return f;
}

std::string presentation_to_text(const FinitePresentation& p) {
  std::string out;
  std::string gens, invols;
  for (Sym s = 0; s < p.alphabet.size(); ++s) {
    if (p.alphabet.inverse(s) == s)
      invols += " " + p.alphabet.name(s);
    else if (p.alphabet.inverse(s) > s)
      gens += " " + p.alphabet.name(s);
  }
  if (!gens.empty()) out += "gen" + gens + "\n";
  if (!invols.empty()) out += "invol" + invols + "\n";
  for (const Word& r : p.relators) out += "rel " + word_to_string(p.alphabet, r) + "\n";
  return out;
}

std::string presentation_to_text(const PresentationFile& f) {
  std::string out = presentation_to_text(f.presentation);
  for (size_t i = 0; i < f.parabolics.size(); ++i) {
    out += "par P" + std::to_string(i + 1) + ":";
    for (Sym s : f.parabolics[i])
      if (f.presentation.alphabet.inverse(s) >= s) out += " " + f.presentation.alphabet.name(s);
    out += "\n";
  }
  switch (f.oracle_kind) {
    case PresentationFile::OracleKind::Free:
      out += "oracle free\n";
      break;
    case PresentationFile::OracleKind::Abelian:
      out += "oracle abelian\n";
      break;
    case PresentationFile::OracleKind::Table:
      out += "oracle table " + f.table_path + "\n";
      break;
    case PresentationFile::OracleKind::Command:
      out += "oracle cmd";
      for (const std::string& c : f.command) out += " " + c;
      out += "\n";
      break;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

OraclePtr make_oracle(const PresentationFile& f) {
  const Alphabet& base = f.presentation.alphabet;
  switch (f.oracle_kind) {
    case PresentationFile::OracleKind::Free:
      return std::make_shared<FreeOracle>(base);
    case PresentationFile::OracleKind::Abelian:
      return std::make_shared<AbelianOracle>(base);
    case PresentationFile::OracleKind::Table:
      return TableOracle::from_text(base, read_file(f.table_path));
    case PresentationFile::OracleKind::Command:
      return std::make_shared<SubprocessOracle>(base, f.command);
  }
  throw ParseError("unknown oracle kind");
}

RelativePresentation realize(const PresentationFile& f, int radius_cap, size_t ball_size_cap) {
  OraclePtr oracle = make_oracle(f);
  FinitePresentation pres = f.presentation;
  if (!pres.is_triangular()) {
    Triangularization t = triangularize(pres);
    oracle = std::make_shared<SubstitutionOracle>(oracle, t.presentation.alphabet,
                                                  t.fresh_definitions);
    pres = std::move(t.presentation);
  }
  return RelativePresentation::build_exact(pres, f.parabolics, std::move(oracle), radius_cap,
                                           ball_size_cap);
}

namespace {

std::string tag_kind_name(RelatorKind k) {
  switch (k) {
    case RelatorKind::RPrimeBase:
      return "base";
    case RelatorKind::RPrimePairing:
      return "pairing";
    case RelatorKind::Parabolic:
      return "parabolic";
    case RelatorKind::NotARelator:
      return "none";
  }
  return "none";
}

RelatorKind tag_kind_from_name(const std::string& s) {
  if (s == "base") return RelatorKind::RPrimeBase;
  if (s == "pairing") return RelatorKind::RPrimePairing;
  if (s == "parabolic") return RelatorKind::Parabolic;
  if (s == "none") return RelatorKind::NotARelator;
  throw ParseError("unknown relator tag kind: " + s);
}

HatLetter parse_hat_letter(const RelativePresentation& x, const std::string& token, int cap) {
  HatWord w = parse_hat_word(x, token, cap);
  if (w.size() != 1) throw ParseError("expected a single hat letter: " + token);
  return w.letters[0];
}

}  // namespace

json diagram_to_json(const RelativePresentation& x, const Diagram& d) {
  json j;
  j["schema"] = 1;
  j["kind"] = "diagram";
  json labels = json::array();
  for (int e = 0; 2 * e < d.dart_count(); ++e)
    labels.push_back(hat_letter_to_string(x, d.label[static_cast<size_t>(2 * e)]));
  j["edge_labels"] = std::move(labels);
  j["faces"] = d.faces;
  json tags = json::array();
  for (const RelatorClass& t : d.tags) {
    json tj;
    tj["relator"] = tag_kind_name(t.kind);
    if (t.parabolic >= 0) tj["parabolic"] = t.parabolic;
    tags.push_back(std::move(tj));
  }
  j["tags"] = std::move(tags);
  return j;
}

Diagram diagram_from_json(const RelativePresentation& x, const json& j, int cap) {
  if (!j.is_object() || j.value("kind", "") != "diagram" || j.value("schema", 0) != 1)
    throw ParseError("not a schema-1 diagram document");
  Diagram d;
  for (const auto& tok : j.at("edge_labels")) {
    HatLetter l = parse_hat_letter(x, tok.get<std::string>(), cap);
    d.label.push_back(l);
    d.label.push_back(x.letter_inverse(l, cap));
  }
  d.faces = j.at("faces").get<std::vector<std::vector<int>>>();
  for (const auto& tj : j.at("tags")) {
    RelatorClass t;
    t.kind = tag_kind_from_name(tj.at("relator").get<std::string>());
    t.parabolic = tj.value("parabolic", -1);
    d.tags.push_back(t);
  }
  require_valid(x, d);
  return d;
}

json state_to_json(const RelativePresentation& x, const EnumerationState& st) {
  json j;
  j["schema"] = 1;
  j["kind"] = "enumeration-state";
  j["version"] = st.version;
  j["next_area"] = st.next_area;
  json frontier = json::array();
  for (const Diagram& d : st.frontier) frontier.push_back(diagram_to_json(x, d));
  j["frontier"] = std::move(frontier);
  j["seen"] = std::vector<std::vector<long long>>(st.seen.begin(), st.seen.end());
  return j;
}

EnumerationState state_from_json(const RelativePresentation& x, const json& j, int cap) {
  if (!j.is_object() || j.value("kind", "") != "enumeration-state" || j.value("schema", 0) != 1)
    throw ParseError("not a schema-1 enumeration-state document");
  EnumerationState st;
  st.version = j.at("version").get<int>();
  if (st.version != 1) throw ParseError("unsupported enumeration-state version");
  st.next_area = j.at("next_area").get<long long>();
  for (const auto& dj : j.at("frontier")) st.frontier.push_back(diagram_from_json(x, dj, cap));
  auto seen = j.at("seen").get<std::vector<std::vector<long long>>>();
  st.seen.insert(seen.begin(), seen.end());
  return st;
}

namespace {

// Orbit id of each dart under the vertex rotation.
std::vector<int> vertex_ids(const Diagram& d, int& vertex_count) {
  std::vector<int> sigma = d.sigma();
  std::vector<int> id(static_cast<size_t>(d.dart_count()), -1);
  vertex_count = 0;
  for (int i = 0; i < d.dart_count(); ++i) {
    if (id[static_cast<size_t>(i)] >= 0) continue;
    for (int t = i; id[static_cast<size_t>(t)] < 0; t = sigma[static_cast<size_t>(t)])
      id[static_cast<size_t>(t)] = vertex_count;
    ++vertex_count;
  }
  return id;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string diagram_to_dot(const RelativePresentation& x, const Diagram& d) {
  std::ostringstream out;
  out << "digraph diagram {\n  node [shape=point];\n";
  if (d.dart_count() == 0) {
    out << "  v0;\n}\n";
    return out.str();
  }
  int vcount = 0;
  std::vector<int> vid = vertex_ids(d, vcount);
  for (int v = 0; v < vcount; ++v) out << "  v" << v << ";\n";
  for (int e = 0; 2 * e < d.dart_count(); ++e) {
    // dart 2e is read from the vertex of its partner toward its own vertex
    out << "  v" << vid[static_cast<size_t>(2 * e + 1)] << " -> v"
        << vid[static_cast<size_t>(2 * e)] << " [label=\""
        << dot_escape(hat_letter_to_string(x, d.label[static_cast<size_t>(2 * e)])) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string incidence_to_dot(const RelativePresentation& x, const Diagram& d) {
  Decomposition dec = decompose_pieces(x, d);
  std::ostringstream out;
  out << "graph incidence {\n";
  for (size_t p = 0; p < dec.pieces.size(); ++p) {
    const Piece& piece = dec.pieces[p];
    if (piece.is_cluster) {
      const Cluster& c = dec.clusters[static_cast<size_t>(piece.cluster)];
      out << "  p" << p << " [shape=box, label=\"cluster " << piece.cluster << " par"
          << c.parabolic + 1 << "\"];\n";
    } else {
      out << "  p" << p << " [shape=ellipse, label=\"piece " << p << " (" << piece.faces.size()
          << " cells)\"];\n";
    }
  }
  for (size_t a = 0; a < dec.incidence.size(); ++a)
    out << "  p" << dec.incidence[a].first << " -- p" << dec.incidence[a].second
        << " [label=\"arc " << a << "\"];\n";
  out << "}\n";
  return out.str();
}

json pack_to_json(const ConstantPack& pack) {
  json j;
  j["mode"] = pack.paper_faithful ? "paper" : "scaled";
  j["K"] = pack.K.str();
  j["Kprime"] = pack.Kprime.str();
  j["rho"] = pack.rho.str();
  j["B"] = pack.B.str();
  j["area_cap"] = pack.area_cap.str();
  j["proper_bound"] = pack.proper_bound.str();
  return j;
}

json detection_report_to_json(const RelativePresentation& x, const DetectionReport& report) {
  json j;
  j["kind"] = "detection-report";
  j["terminated"] = report.terminated;
  j["mode"] = report.paper_faithful ? "paper" : "scaled";
  j["K"] = report.K.str();
  j["rounds_run"] = report.rounds_run;
  j["words_checked"] = report.words_checked;
  json pars = json::array();
  for (const ParabolicReport& p : report.parabolics) {
    json pj;
    pj["presentation"] = presentation_to_text(p.presentation);
    pj["presentation_capped"] = p.presentation_capped;
    pj["proper"] = p.proper;
    pj["properness_withheld"] = p.properness_withheld;
    json abs = json::array();
    for (const Absorption& ab : p.absorbs) {
      json aj;
      aj["generator"] = x.alphabet().name(ab.s);
      aj["absorbed_as"] = word_to_string(x.alphabet(), ab.a);
      abs.push_back(std::move(aj));
    }
    pj["absorbs"] = std::move(abs);
    pars.push_back(std::move(pj));
  }
  j["parabolics"] = std::move(pars);
  json fails = json::array();
  for (const FailedRound& f : report.failures) {
    json fj;
    fj["K"] = f.K.str();
    fj["witness"] = hat_word_to_string(x, f.witness);
    fj["witness_area"] = f.witness_area;
    fj["witness_length"] = f.witness_length;
    fails.push_back(std::move(fj));
  }
  j["failures"] = std::move(fails);
  return j;
}

}  // namespace vk
