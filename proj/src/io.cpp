#include "tpcsp/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace tpcsp {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// trailing [xN] multiplicity token
std::optional<long long> parse_mult_token(const std::string& tok, int line_no) {
  if (tok.size() < 2 || tok[0] != 'x') return std::nullopt;
  for (size_t i = 1; i < tok.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(tok[i]))) return std::nullopt;
  long long m = 0;
  try {
    m = std::stoll(tok.substr(1));
  } catch (const std::exception&) {
    throw ParseError(line_no, "multiplicity out of range: " + tok);
  }
  if (m < 1) throw ParseError(line_no, "multiplicity must be at least 1: " + tok);
  return m;
}

long long parse_nonneg(const std::string& tok, int line_no, const char* what) {
  if (tok.empty()) throw ParseError(line_no, std::string(what) + " missing");
  for (char ch : tok)
    if (!isdigit(static_cast<unsigned char>(ch)))
      throw ParseError(line_no, std::string(what) + " must be a non-negative integer: " + tok);
  try {
    return std::stoll(tok);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string(what) + " out of range: " + tok);
  }
}

unsigned parse_pi_words(const std::string& arg, int line_no) {
  unsigned mask = 0;
  std::string word;
  std::istringstream in(arg);
  while (std::getline(in, word, ',')) {
    if (word.size() != 3) throw ParseError(line_no, "permutation word must have 3 characters: " + word);
    std::array<int, 3> w{};
    for (int i = 0; i < 3; ++i) {
      char ch = word[static_cast<size_t>(i)];
      if (ch < '1' || ch > '3')
        throw ParseError(line_no, "permutation word characters must be 1, 2 or 3: " + word);
      w[static_cast<size_t>(i)] = ch - '0';
    }
    if (w[0] == w[1] || w[0] == w[2] || w[1] == w[2])
      throw ParseError(line_no, "not a permutation of {1,2,3}: " + word);
    mask |= 1u << Perm3::from_word(w).index;
  }
  if (mask == 0) throw ParseError(line_no, "pi directive needs at least one word");
  return mask;
}

}  // namespace

ParsedFile parse_instance_text(std::string_view text) {
  VarTable vars;
  std::vector<TripleConstraint> cons;
  std::vector<Arc> arcs;
  std::vector<BtwConstraint> btws;
  std::optional<unsigned> pi_mask;
  std::optional<long long> k;
  bool saw_con = false, saw_mixed = false;

  auto var_of = [&](const std::string& tok) { return vars.find_or_add(tok); };

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    size_t first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (trimmed[first] == '#') continue;
    std::vector<std::string> toks = split_ws(trimmed);
    const std::string& dir = toks[0];

    if (dir == "pi") {
      if (toks.size() != 2) throw ParseError(line_no, "pi takes one comma-separated argument");
      if (pi_mask) throw ParseError(line_no, "duplicate pi directive");
      pi_mask = parse_pi_words(toks[1], line_no);
    } else if (dir == "k") {
      if (toks.size() != 2) throw ParseError(line_no, "k takes one argument");
      if (k) throw ParseError(line_no, "duplicate k directive");
      k = parse_nonneg(toks[1], line_no, "k");
    } else if (dir == "con") {
      if (toks.size() != 4 && toks.size() != 5)
        throw ParseError(line_no, "con takes three variables and an optional xN");
      long long mult = 1;
      if (toks.size() == 5) {
        auto m = parse_mult_token(toks[4], line_no);
        if (!m) throw ParseError(line_no, "malformed multiplicity: " + toks[4]);
        mult = *m;
      }
      if (toks[1] == toks[2] || toks[1] == toks[3] || toks[2] == toks[3])
        throw ParseError(line_no, "con variables must be pairwise distinct");
      saw_con = true;
      cons.push_back({var_of(toks[1]), var_of(toks[2]), var_of(toks[3]), mult});
    } else if (dir == "arc") {
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError(line_no, "arc takes two variables and an optional xN");
      long long mult = 1;
      if (toks.size() == 4) {
        auto m = parse_mult_token(toks[3], line_no);
        if (!m) throw ParseError(line_no, "malformed multiplicity: " + toks[3]);
        mult = *m;
      }
      if (toks[1] == toks[2]) throw ParseError(line_no, "arc endpoints must differ");
      saw_mixed = true;
      arcs.push_back({var_of(toks[1]), var_of(toks[2]), mult});
    } else if (dir == "btw") {
      if (toks.size() != 4 && toks.size() != 5)
        throw ParseError(line_no, "btw takes three variables and an optional xN");
      long long mult = 1;
      if (toks.size() == 5) {
        auto m = parse_mult_token(toks[4], line_no);
        if (!m) throw ParseError(line_no, "malformed multiplicity: " + toks[4]);
        mult = *m;
      }
      if (toks[1] == toks[2] || toks[1] == toks[3] || toks[2] == toks[3])
        throw ParseError(line_no, "btw variables must be pairwise distinct");
      saw_mixed = true;
      VarId mid = var_of(toks[1]), o1 = var_of(toks[2]), o2 = var_of(toks[3]);
      btws.push_back({mid, std::min(o1, o2), std::max(o1, o2), mult});
    } else {
      throw ParseError(line_no, "unknown directive: " + dir);
    }
    if (saw_con && saw_mixed)
      throw ParseError(line_no, "a file holds either con lines or arc/btw lines, never both");
    if (saw_mixed && pi_mask)
      throw ParseError(line_no, "pi applies to triple instances only");
  }

  ParsedFile out;
  out.k = k.value_or(0);
  if (saw_mixed) {
    MixedInstance mixed;
    mixed.vars = std::move(vars);
    mixed.arcs = std::move(arcs);
    mixed.btws = std::move(btws);
    mixed.normalize();
    out.instance = std::move(mixed);
  } else {
    LoInstance lo;
    lo.vars = std::move(vars);
    lo.constraints = std::move(cons);
    lo.pi = PiSet(pi_mask.value_or(1u));
    lo.k = out.k;
    lo.normalize();
    out.instance = std::move(lo);
  }
  return out;
}

ParsedFile parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

// constraint lines are ordered by variable names, which survives the
// id renumbering a re-parse performs; the canonical text is therefore a
// fixed point of parse followed by serialize
std::string serialize(const LoInstance& inst) {
  validate(inst);
  if (inst.pi.empty())
    fail(Errc::invalid_argument, "the empty Pi set has no file representation");
  std::ostringstream out;
  out << "pi " << inst.pi.words_str() << "\n";
  out << "k " << inst.k << "\n";
  std::vector<std::tuple<std::string, std::string, std::string, long long>> lines;
  for (const auto& c : inst.constraints)
    lines.emplace_back(inst.vars.name(c.v1), inst.vars.name(c.v2), inst.vars.name(c.v3), c.mult);
  std::sort(lines.begin(), lines.end());
  for (const auto& [v1, v2, v3, mult] : lines) {
    out << "con " << v1 << ' ' << v2 << ' ' << v3;
    if (mult != 1) out << " x" << mult;
    out << "\n";
  }
  return out.str();
}

std::string serialize(const MixedInstance& mixed, long long k) {
  validate(mixed);
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  std::ostringstream out;
  out << "k " << k << "\n";
  std::vector<std::tuple<std::string, std::string, long long>> arc_lines;
  for (const auto& a : mixed.arcs)
    arc_lines.emplace_back(mixed.vars.name(a.tail), mixed.vars.name(a.head), a.mult);
  std::sort(arc_lines.begin(), arc_lines.end());
  for (const auto& [tail, head, mult] : arc_lines) {
    out << "arc " << tail << ' ' << head;
    if (mult != 1) out << " x" << mult;
    out << "\n";
  }
  std::vector<std::tuple<std::string, std::string, std::string, long long>> btw_lines;
  for (const auto& b : mixed.btws) {
    auto [lo, hi] = std::minmax(mixed.vars.name(b.outer_lo), mixed.vars.name(b.outer_hi));
    btw_lines.emplace_back(mixed.vars.name(b.middle), lo, hi, b.mult);
  }
  std::sort(btw_lines.begin(), btw_lines.end());
  for (const auto& [mid, lo, hi, mult] : btw_lines) {
    out << "btw " << mid << ' ' << lo << ' ' << hi;
    if (mult != 1) out << " x" << mult;
    out << "\n";
  }
  return out.str();
}

std::string serialize(const ParsedFile& file) {
  return file.is_lo() ? serialize(file.lo()) : serialize(file.mixed(), file.k);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Errc::io, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(Errc::io, "failed writing " + path);
}

}  // namespace tpcsp
