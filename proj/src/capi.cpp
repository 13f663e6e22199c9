#include "vankamp.h"

#include <cstring>
#include <optional>
#include <string>

#include "vankamp/checks.hpp"
#include "vankamp/class_search.hpp"
#include "vankamp/textio.hpp"

using nlohmann::json;

struct rh_session {
  vk::PresentationFile file;
  std::optional<vk::RelativePresentation> x;
  std::string error;
};

namespace {

thread_local std::string g_open_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_config(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return json::object();
  json cfg = json::parse(config_json, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object())
    throw vk::ParseError("config is not a JSON object");
  return cfg;
}

json parse_doc(const char* text, const char* what) {
  json j = json::parse(text == nullptr ? "" : text, nullptr, false);
  if (j.is_discarded()) throw vk::ParseError(std::string(what) + " is not valid JSON");
  return j;
}

vk::BigInt big_field(const json& v, const char* name) {
  if (v.is_string()) return vk::BigInt(v.get<std::string>());
  if (v.is_number_integer()) return vk::BigInt(v.get<long long>());
  throw vk::ParseError(std::string(name) + " must be an integer or a decimal string");
}

vk::ConstantPack parse_pack(const json& cfg) {
  if (!cfg.contains("pack")) throw vk::ParseError("config needs a \"pack\" object");
  const json& p = cfg.at("pack");
  std::string mode = p.at("mode").get<std::string>();
  if (mode == "paper") return vk::ConstantPack::paper(big_field(p.at("K"), "pack.K"));
  if (mode == "scaled")
    return vk::ConstantPack::scaled(
        big_field(p.at("K"), "pack.K"), big_field(p.at("B"), "pack.B"),
        big_field(p.at("area_cap"), "pack.area_cap"),
        big_field(p.at("proper_bound"), "pack.proper_bound"));
  throw vk::ParseError("pack.mode must be \"paper\" or \"scaled\"");
}

vk::EnumerationCaps parse_caps(const json& cfg) {
  if (!cfg.contains("caps")) throw vk::ParseError("config needs a \"caps\" object");
  const json& c = cfg.at("caps");
  vk::EnumerationCaps caps;
  caps.max_area = c.at("max_area").get<long long>();
  caps.max_complexity = c.at("max_complexity").get<long long>();
  caps.max_boundary_length = c.at("max_boundary_length").get<long long>();
  caps.ball_radius_cap = c.value("ball_radius_cap", caps.ball_radius_cap);
  return caps;
}

vk::DetectionBudget parse_budget(const json& cfg) {
  vk::DetectionBudget b;
  if (!cfg.contains("budget")) return b;
  const json& j = cfg.at("budget");
  b.max_rounds = j.value("max_rounds", b.max_rounds);
  b.max_words_per_round = j.value("max_words_per_round", b.max_words_per_round);
  b.relator_length_cap = j.value("relator_length_cap", b.relator_length_cap);
  if (j.contains("k_stride")) b.k_stride = big_field(j.at("k_stride"), "budget.k_stride");
  b.radius_cap = j.value("radius_cap", b.radius_cap);
  return b;
}

vk::SearchBudget parse_search(const json& cfg) {
  if (!cfg.contains("search")) throw vk::ParseError("config needs a \"search\" object");
  const json& j = cfg.at("search");
  vk::SearchBudget b;
  b.max_steps = j.at("max_steps").get<long long>();
  b.step_quantum = j.value("step_quantum", b.step_quantum);
  b.max_tuple_n = j.value("max_tuple_n", b.max_tuple_n);
  b.max_word_length = j.value("max_word_length", b.max_word_length);
  const json& t = j.at("tietze");
  b.tietze.max_moves = t.at("max_moves").get<long long>();
  b.tietze.max_relator_length = t.at("max_relator_length").get<long long>();
  b.tietze.max_generators = t.at("max_generators").get<long long>();
  b.tietze.max_conjugate_factors =
      t.value("max_conjugate_factors", b.tietze.max_conjugate_factors);
  b.tietze.max_conjugator_length =
      t.value("max_conjugator_length", b.tietze.max_conjugator_length);
  b.detect = parse_budget(cfg);
  return b;
}

vk::ClassEnumerator parse_class(const json& cfg) {
  const json& j = cfg.at("search");
  if (!j.contains("class"))
    throw vk::ParseError("config needs a \"search.class\" object");
  const json& c = j.at("class");
  if (c.contains("list")) {
    std::vector<vk::FinitePresentation> list;
    for (const json& t : c.at("list"))
      list.push_back(vk::parse_presentation_text(t.get<std::string>()).presentation);
    return vk::ClassEnumerator::from_list(std::move(list));
  }
  if (c.contains("cmd"))
    return vk::ClassEnumerator::from_command(c.at("cmd").get<std::vector<std::string>>());
  throw vk::ParseError("search.class needs \"list\" or \"cmd\"");
}

int parse_cap(const json& cfg) { return cfg.value("cap", 64); }

std::string doc(const char* command, const json& config_echo, const json& report) {
  json j{{"schema", 1}, {"command", command}, {"config", config_echo}, {"report", report}};
  return j.dump(2) + "\n";
}

/// Runs the operation body, mapping exceptions to return codes. A
/// BudgetExhausted escaping the body (a mid-round word-budget stop with no
/// partial report of its own) still produces a document so RH_BUDGET always
/// comes with output.
template <typename F>
int guarded(rh_session* s, const char* command, char** out, F&& body) {
  if (s == nullptr) return RH_ERROR;
  try {
    return body();
  } catch (const vk::BudgetExhausted& e) {
    s->error = e.what();
    if (out != nullptr)
      *out = dup_string(doc(command, json::object(),
                            json{{"budget_exhausted", true}, {"message", s->error}}));
    return RH_BUDGET;
  } catch (const json::exception& e) {
    s->error = std::string("config: ") + e.what();
    return RH_ERROR;
  } catch (const std::exception& e) {
    s->error = e.what();
    return RH_ERROR;
  }
}

json diagram_report(const vk::RelativePresentation& x, const vk::Diagram& d) {
  vk::Measure m = vk::measure(d);
  return json{{"area", m.area},
              {"norm1", m.norm1},
              {"norminf", m.norminf},
              {"thick", m.is_thick},
              {"boundary", vk::hat_word_to_string(x, vk::boundary_word(d))},
              {"diagram", vk::diagram_to_json(x, d)}};
}

}  // namespace

extern "C" {

rh_session* rh_open(const char* presentation_text) {
  try {
    auto s = std::make_unique<rh_session>();
    s->file = vk::parse_presentation_text(
        presentation_text == nullptr ? "" : presentation_text);
    if (s->file.presentation.alphabet.size() == 0)
      throw vk::ParseError("presentation declares no generators");
    s->x = vk::realize(s->file);
    return s.release();
  } catch (const std::exception& e) {
    g_open_error = e.what();
    return nullptr;
  }
}

void rh_close(rh_session* s) { delete s; }

const char* rh_last_error(const rh_session* s) {
  return s == nullptr ? g_open_error.c_str() : s->error.c_str();
}

void rh_string_free(char* s) { delete[] s; }

int rh_detect(rh_session* s, const char* config_json, char** out_json) {
  return guarded(s, "detect", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::ConstantPack pack = parse_pack(cfg);
    vk::DetectionBudget budget = parse_budget(cfg);
    vk::DetectionReport r = vk::detect(*s->x, pack, budget);
    *out_json = dup_string(doc("detect", cfg, vk::detection_report_to_json(*s->x, r)));
    return r.terminated ? RH_OK : RH_BUDGET;
  });
}

int rh_area(rh_session* s, const char* hat_word, const char* config_json, char** out_json) {
  return guarded(s, "area", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::EnumerationCaps caps = parse_caps(cfg);
    int cap = parse_cap(cfg);
    vk::HatWord w =
        vk::parse_hat_word(*s->x, hat_word == nullptr ? "" : hat_word, cap);
    vk::MinAreaResult m = vk::min_area(*s->x, w, caps, cap);
    json report{{"word", vk::hat_word_to_string(*s->x, w)},
                {"exceeds_caps", m.exceeds_caps}};
    if (!m.exceeds_caps) {
      report["area"] = m.area;
      if (m.witness) report["witness"] = vk::diagram_to_json(*s->x, *m.witness);
    }
    *out_json = dup_string(doc("area", cfg, report));
    return m.exceeds_caps ? RH_BUDGET : RH_OK;
  });
}

int rh_enumerate(rh_session* s, const char* config_json, const char* state_json,
                 char** out_json) {
  return guarded(s, "enum", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::EnumerationCaps caps = parse_caps(cfg);
    int cap = parse_cap(cfg);
    vk::EnumerationState st =
        state_json == nullptr
            ? vk::EnumerationState::start()
            : vk::state_from_json(*s->x, parse_doc(state_json, "state"), cap);
    json diagrams = json::array();
    while (vk::enumerate_layer(*s->x, caps, st, [&](const vk::Diagram& d) {
      diagrams.push_back(diagram_report(*s->x, d));
      return true;
    })) {
    }
    json report{{"count", diagrams.size()},
                {"diagrams", std::move(diagrams)},
                {"state", vk::state_to_json(*s->x, st)}};
    *out_json = dup_string(doc("enum", cfg, report));
    return RH_OK;
  });
}

int rh_fill(rh_session* s, int parabolic, const char* hat_word, const char* config_json,
            char** out_json) {
  return guarded(s, "fill", out_json, [&] {
    json cfg = parse_config(config_json);
    int cap = parse_cap(cfg);
    if (parabolic < 1 || parabolic > s->x->parabolic_count())
      throw vk::ParseError("parabolic index out of range: " + std::to_string(parabolic));
    vk::HatWord w =
        vk::parse_hat_word(*s->x, hat_word == nullptr ? "" : hat_word, cap);
    vk::Diagram d = vk::standard_filling(*s->x, parabolic - 1, w, cap);
    *out_json = dup_string(doc("fill", cfg, diagram_report(*s->x, d)));
    return RH_OK;
  });
}

int rh_surgery(rh_session* s, const char* diagram_json, const char* config_json,
               char** out_json) {
  return guarded(s, "surgery", out_json, [&] {
    json cfg = parse_config(config_json);
    int cap = parse_cap(cfg);
    vk::Diagram d = vk::diagram_from_json(*s->x, parse_doc(diagram_json, "diagram"), cap);
    vk::Minimizer minimize;
    if (cfg.contains("caps")) minimize = vk::area_minimizer(*s->x, parse_caps(cfg), cap);
    vk::Decomposition dec = vk::decompose_pieces(*s->x, d);
    std::vector<vk::Candidate> cands = vk::reduction_candidates(*s->x, d, cap, minimize);
    json list = json::array();
    for (const vk::Candidate& c : cands) {
      list.push_back(json{{"from_cluster", c.from_cluster},
                          {"index", c.index},
                          {"boundary", vk::hat_word_to_string(*s->x, c.boundary)},
                          {"area", c.size.area},
                          {"norm1", c.size.norm1},
                          {"norminf", c.size.norminf},
                          {"thick", c.size.is_thick},
                          {"minimization_capped", c.minimization_capped},
                          {"diagram", vk::diagram_to_json(*s->x, c.diagram)}});
    }
    json report{{"clusters", dec.clusters.size()},
                {"pieces", dec.pieces.size()},
                {"arcs", dec.arcs.size()},
                {"candidates", std::move(list)}};
    *out_json = dup_string(doc("surgery", cfg, report));
    return RH_OK;
  });
}

int rh_parabolics(rh_session* s, const char* config_json, char** out_json) {
  return guarded(s, "parabolics", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::DetectionBudget budget = parse_budget(cfg);
    json list = json::array();
    for (int i = 0; i < s->x->parabolic_count(); ++i) {
      vk::FinitePresentation p =
          vk::parabolic_presentation(*s->x, i, budget.relator_length_cap);
      json entry{{"index", i + 1},
                 {"presentation", vk::presentation_to_text(p)},
                 {"relators", p.relators.size()}};
      if (cfg.contains("pack")) {
        try {
          vk::PropernessResult pr =
              vk::properness(*s->x, i, parse_pack(cfg), budget.radius_cap);
          entry["proper"] = pr.proper;
          if (!pr.proper) {
            json absorbs = json::array();
            for (const vk::Absorption& ab : pr.absorbs)
              absorbs.push_back(json{
                  {"generator", s->x->alphabet().name(ab.s)},
                  {"word", vk::word_to_string(s->x->alphabet(), ab.a)}});
            entry["absorbs"] = std::move(absorbs);
          }
        } catch (const vk::Overflow&) {
          entry["properness_withheld"] = true;
        }
      }
      list.push_back(std::move(entry));
    }
    *out_json = dup_string(doc("parabolics", cfg, json{{"parabolics", std::move(list)}}));
    return RH_OK;
  });
}

int rh_search(rh_session* s, const char* config_json, const char* checkpoint_json,
              char** out_json) {
  return guarded(s, "search", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::ConstantPack pack = parse_pack(cfg);
    vk::SearchBudget budget = parse_search(cfg);
    vk::ClassEnumerator cls = parse_class(cfg);
    vk::OraclePtr oracle = vk::make_oracle(s->file);
    std::optional<vk::Searcher> searcher;
    if (checkpoint_json == nullptr)
      searcher.emplace(s->file.presentation, oracle, std::move(cls), budget, pack);
    else
      searcher.emplace(vk::Searcher::restore(s->file.presentation, oracle, std::move(cls),
                                             budget, pack,
                                             parse_doc(checkpoint_json, "checkpoint")));
    vk::SearchReport r = searcher->run();
    json out{{"schema", 1},
             {"command", "search"},
             {"config", cfg},
             {"report", vk::search_report_to_json(s->file.presentation.alphabet, r)}};
    if (!r.terminated) out["checkpoint"] = searcher->checkpoint();
    *out_json = dup_string(out.dump(2) + "\n");
    return r.terminated ? RH_OK : RH_BUDGET;
  });
}

int rh_render(rh_session* s, const char* diagram_json, int incidence, char** out_dot) {
  return guarded(s, "render", out_dot, [&] {
    vk::Diagram d = vk::diagram_from_json(*s->x, parse_doc(diagram_json, "diagram"), 64);
    *out_dot = dup_string(incidence != 0 ? vk::incidence_to_dot(*s->x, d)
                                         : vk::diagram_to_dot(*s->x, d));
    return RH_OK;
  });
}

int rh_check(rh_session* s, const char* config_json, char** out_json) {
  return guarded(s, "check", out_json, [&] {
    json cfg = parse_config(config_json);
    vk::CorpusCheckReport r = vk::check_corpus(*s->x, parse_caps(cfg), parse_cap(cfg));
    *out_json = dup_string(doc("check", cfg, vk::corpus_check_to_json(r)));
    return RH_OK;
  });
}

}  // extern "C"
