#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "vankamp/cluster.hpp"
#include "vankamp/isoperimetry.hpp"

namespace vk {

/// A parsed presentation file. Line-oriented format, `#` starts a comment:
///   gen a b            generators (inverses implicit, written a^-1)
///   invol s            a self-inverse generator
///   rel a b a^-1 b^-1  one relator per line; tokens may carry ^k exponents
///   par P1: a          parabolic generating set (auto-symmetrized)
///   oracle free | abelian | table <path> | cmd <argv...>
struct PresentationFile {
  enum class OracleKind { Free, Abelian, Table, Command };

  FinitePresentation presentation;
  std::vector<std::vector<Sym>> parabolics;
  OracleKind oracle_kind = OracleKind::Free;
  std::string table_path;
  std::vector<std::string> command;
};

/// Throws ParseError naming the offending line.
PresentationFile parse_presentation_text(const std::string& text);

/// Renders back to the text format (used by the class-search subprocess
/// protocol and checkpoints). Round-trips through parse_presentation_text.
std::string presentation_to_text(const PresentationFile& f);
std::string presentation_to_text(const FinitePresentation& p);

/// Whole-file read; throws ParseError when the file cannot be opened.
std::string read_file(const std::string& path);

/// The word-problem oracle a file declares, over the file's own alphabet
/// (no triangularization).
OraclePtr make_oracle(const PresentationFile& f);

/// Builds the exact relative presentation from a parsed file: constructs the
/// declared oracle, triangularizes when needed (fresh generators become
/// definitional substitutions over the declared oracle), and symmetrizes the
/// parabolic subsets.
RelativePresentation realize(const PresentationFile& f, int radius_cap = 64,
                             size_t ball_size_cap = 1u << 20);

/// Structured (JSON) diagram serialization. Labels are stored in the
/// hat-word token syntax; only even darts are stored, odd labels being
/// forced by the involution. Import validates the reconstruction.
nlohmann::json diagram_to_json(const RelativePresentation& x, const Diagram& d);
Diagram diagram_from_json(const RelativePresentation& x, const nlohmann::json& j, int cap);

/// Version-stamped enumeration checkpoint.
nlohmann::json state_to_json(const RelativePresentation& x, const EnumerationState& st);
EnumerationState state_from_json(const RelativePresentation& x, const nlohmann::json& j,
                                 int cap);

/// DOT rendering of the diagram's 1-skeleton, edges labeled by their letters.
std::string diagram_to_dot(const RelativePresentation& x, const Diagram& d);

/// DOT rendering of the piece incidence graph: box-shaped vertices for
/// complicated clusters, ellipses for regular pieces, edges per arc.
std::string incidence_to_dot(const RelativePresentation& x, const Diagram& d);

/// Report serialization for the structured CLI output.
nlohmann::json pack_to_json(const ConstantPack& pack);
nlohmann::json detection_report_to_json(const RelativePresentation& x,
                                        const DetectionReport& report);

}  // namespace vk
