#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tpcsp/instance.hpp"

namespace tpcsp {

// A file holds either a triple instance (con lines) or a mixed instance
// (arc/btw lines), never both. Mixed files may still carry a k line, which
// survives next to the instance here.
struct ParsedFile {
  std::variant<LoInstance, MixedInstance> instance;
  long long k = 0;

  bool is_lo() const { return std::holds_alternative<LoInstance>(instance); }
  const LoInstance& lo() const { return std::get<LoInstance>(instance); }
  const MixedInstance& mixed() const { return std::get<MixedInstance>(instance); }
};

// Grammar, one directive per line, '#' starts a comment line:
//   pi <w1>[,<w2>...]     3-char permutation words over {1,2,3}
//   k <int >= 0>
//   con <v1> <v2> <v3> [xN]
//   arc <u> <v> [xN]
//   btw <mid> <a> <b> [xN]
// Variables are whitespace-free tokens, ids assigned by first appearance.
// A triple file without a pi line defaults to Linear Ordering.
ParsedFile parse_instance_text(std::string_view text);
ParsedFile parse_instance_file(const std::string& path);

// Canonical text: pi (triple instances), k, then constraints in normalized
// order. Variables not occurring in a constraint are not representable and
// are dropped; no answer depends on them. The empty Pi set has no file form.
std::string serialize(const LoInstance& inst);
std::string serialize(const MixedInstance& mixed, long long k = 0);
std::string serialize(const ParsedFile& file);

void write_file(const std::string& path, const std::string& content);

}  // namespace tpcsp
