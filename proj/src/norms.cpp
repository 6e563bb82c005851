#include "kuramoto/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace kuramoto {

namespace {

void check_dims(const PolytopeSpec& spec, const FrequencyVector& y) {
  if (spec.n != y.n()) throw std::invalid_argument("norm_for: dimension mismatch");
}

// Partial-sum form of the circumscribed Dorfler-Bullo norm: sort descending,
// then max_k S_k / (k (N - k)). O(N log N), no subset enumeration.
double cdb_norm(const FrequencyVector& y) {
  const int n = y.n();
  Vec s(y.entries());
  std::sort(s.begin(), s.end(), std::greater<>());
  double best = 0.0, partial = 0.0;
  for (int k = 1; k < n; ++k) {
    partial += s[k - 1];
    best = std::max(best, partial / (static_cast<double>(k) * (n - k)));
  }
  return best;
}

// (sum of j largest - sum of j smallest) / (2 j tau_{N,j})
double ccs_gen_norm(const FrequencyVector& y, int n, int j) {
  Vec s(y.entries());
  std::sort(s.begin(), s.end());
  double top = 0.0, bot = 0.0;
  for (int l = 0; l < j; ++l) {
    bot += s[l];
    top += s[n - 1 - l];
  }
  return (top - bot) / (2.0 * j * tau_general(n, j));
}

}  // namespace

PolytopeSpec PolytopeSpec::named(PolyKind kind, int n, int j) {
  if (kind == PolyKind::Intersection || kind == PolyKind::HullOfUnion)
    throw std::invalid_argument("named: composite kind");
  if (n < 2) throw std::invalid_argument("PolytopeSpec: need n >= 2");
  if ((kind == PolyKind::I_CS_gen || kind == PolyKind::C_CS_gen) && (j < 1 || 2 * j > n))
    throw std::invalid_argument("PolytopeSpec: need 1 <= j, 2j <= n");
  PolytopeSpec s;
  s.kind = kind;
  s.n = n;
  s.j = j;
  return s;
}

PolytopeSpec PolytopeSpec::intersection(std::vector<PolytopeSpec> members) {
  if (members.empty()) throw std::invalid_argument("Intersect: empty");
  PolytopeSpec s;
  s.kind = PolyKind::Intersection;
  s.n = members.front().n;
  for (const auto& m : members) {
    if (m.n != s.n) throw std::invalid_argument("Intersect: members must share n");
    if (!m.is_circumscribed())
      throw std::invalid_argument("Intersect: members must be circumscribed kinds");
  }
  s.members = std::move(members);
  return s;
}

PolytopeSpec PolytopeSpec::hull_of_union(std::vector<PolytopeSpec> members) {
  if (members.empty()) throw std::invalid_argument("Hull: empty");
  PolytopeSpec s;
  s.kind = PolyKind::HullOfUnion;
  s.n = members.front().n;
  for (const auto& m : members) {
    if (m.n != s.n) throw std::invalid_argument("Hull: members must share n");
    if (!m.is_inscribed())
      throw std::invalid_argument("Hull: members must be inscribed kinds");
  }
  s.members = std::move(members);
  return s;
}

bool PolytopeSpec::is_inscribed() const {
  switch (kind) {
    case PolyKind::I_DB:
    case PolyKind::I_CS:
    case PolyKind::I_CS_gen:
    case PolyKind::HullOfUnion:
      return true;
    default:
      return false;
  }
}

bool PolytopeSpec::is_circumscribed() const {
  switch (kind) {
    case PolyKind::C_DB:
    case PolyKind::C_CS:
    case PolyKind::C_CS_gen:
    case PolyKind::C_CS_all:
    case PolyKind::Intersection:
      return true;
    default:
      return false;
  }
}

namespace {

struct SpecParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw std::invalid_argument("spec parse: expected '" + std::string(1, c) + "' in " + text);
    ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw std::invalid_argument("spec parse: expected name in " + text);
    return text.substr(start, pos - start);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("spec parse: expected integer in " + text);
    return std::stoi(text.substr(start, pos - start));
  }

  PolytopeSpec spec() {
    const std::string name = ident();
    expect('(');
    PolytopeSpec out;
    if (name == "Intersect" || name == "Hull") {
      std::vector<PolytopeSpec> members;
      members.push_back(spec());
      while (peek() == ',') {
        expect(',');
        members.push_back(spec());
      }
      expect(')');
      return name == "Intersect" ? PolytopeSpec::intersection(std::move(members))
                                 : PolytopeSpec::hull_of_union(std::move(members));
    }
    PolyKind kind;
    bool has_j = false;
    if (name == "I_DB") kind = PolyKind::I_DB;
    else if (name == "I_CS") kind = PolyKind::I_CS;
    else if (name == "I_CS_gen") { kind = PolyKind::I_CS_gen; has_j = true; }
    else if (name == "C_DB") kind = PolyKind::C_DB;
    else if (name == "C_CS") kind = PolyKind::C_CS;
    else if (name == "C_CS_gen") { kind = PolyKind::C_CS_gen; has_j = true; }
    else if (name == "C_CS_all") kind = PolyKind::C_CS_all;
    else throw std::invalid_argument("spec parse: unknown kind " + name);
    const int n = integer();
    int j = 1;
    if (has_j) {
      expect(',');
      j = integer();
    }
    expect(')');
    return PolytopeSpec::named(kind, n, j);
  }
};

}  // namespace

PolytopeSpec PolytopeSpec::parse(const std::string& text) {
  SpecParser p{text};
  PolytopeSpec s = p.spec();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::invalid_argument("spec parse: trailing input in " + text);
  return s;
}

std::string PolytopeSpec::str() const {
  const auto num = [this] { return std::to_string(n); };
  switch (kind) {
    case PolyKind::I_DB: return "I_DB(" + num() + ")";
    case PolyKind::I_CS: return "I_CS(" + num() + ")";
    case PolyKind::I_CS_gen: return "I_CS_gen(" + num() + "," + std::to_string(j) + ")";
    case PolyKind::C_DB: return "C_DB(" + num() + ")";
    case PolyKind::C_CS: return "C_CS(" + num() + ")";
    case PolyKind::C_CS_gen: return "C_CS_gen(" + num() + "," + std::to_string(j) + ")";
    case PolyKind::C_CS_all: return "C_CS_all(" + num() + ")";
    case PolyKind::Intersection:
    case PolyKind::HullOfUnion: {
      std::string out = kind == PolyKind::Intersection ? "Intersect(" : "Hull(";
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += members[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

double max_spread_on_unit_ball(const PolytopeSpec& spec) {
  const int n = spec.n;
  switch (spec.kind) {
    case PolyKind::I_DB:
      return static_cast<double>(n);
    case PolyKind::C_DB:
      // (N-1, 0, ..., 0, -(N-1)) has every partial-sum ratio <= 1
      return 2.0 * (n - 1);
    case PolyKind::I_CS:
    case PolyKind::C_CS:
      return 2.0 * tau(n);
    case PolyKind::I_CS_gen:
      // |y|_inf <= tau_{N,j} bounds the spread by 2 tau_{N,j}
      return 2.0 * tau_general(n, spec.j);
    case PolyKind::C_CS_gen:
      // top-j minus bottom-j partial sums dominate the spread
      return 2.0 * spec.j * tau_general(n, spec.j);
    case PolyKind::C_CS_all: {
      double best = 2.0 * tau(n);
      for (int j = 2; 2 * j <= n; ++j)
        best = std::min(best, 2.0 * j * tau_general(n, j));
      return best;
    }
    case PolyKind::Intersection: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& m : spec.members)
        best = std::min(best, max_spread_on_unit_ball(m));
      return best;
    }
    case PolyKind::HullOfUnion: {
      double best = 0.0;
      for (const auto& m : spec.members)
        best = std::max(best, max_spread_on_unit_ball(m));
      return best;
    }
  }
  throw std::logic_error("max_spread_on_unit_ball: unreachable");
}

double norm_for(const PolytopeSpec& spec, const FrequencyVector& y) {
  check_dims(spec, y);
  const int n = spec.n;
  switch (spec.kind) {
    case PolyKind::I_DB:
      return spread(y.span()) / n;
    case PolyKind::I_CS:
      return vec_norm1(y.span()) / (2.0 * tau(n));
    case PolyKind::I_CS_gen: {
      const double t = tau_general(n, spec.j);
      return std::max(vec_norm1(y.span()) / (2.0 * spec.j * t), vec_norm_inf(y.span()) / t);
    }
    case PolyKind::C_DB:
      return cdb_norm(y);
    case PolyKind::C_CS:
      return spread(y.span()) / (2.0 * tau(n));
    case PolyKind::C_CS_gen:
      return ccs_gen_norm(y, n, spec.j);
    case PolyKind::C_CS_all: {
      double best = 0.0;
      for (int j = 1; 2 * j <= n; ++j) best = std::max(best, ccs_gen_norm(y, n, j));
      return best;
    }
    case PolyKind::Intersection: {
      double best = 0.0;
      for (const auto& m : spec.members) best = std::max(best, norm_for(m, y));
      return best;
    }
    case PolyKind::HullOfUnion:
      throw std::invalid_argument(
          "norm_for: hull-of-union has no closed-form norm; use hull_membership");
  }
  throw std::logic_error("norm_for: unreachable");
}

double circ_norm_generic(const VertexFamily& family, const FrequencyVector& y) {
  if (family.n() != y.n()) throw std::invalid_argument("circ_norm_generic: dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  family.for_each([&](std::span<const double> x) {
    any = true;
    best = std::max(best, vec_dot(y.span(), x) / vec_dot(x, x));
  });
  if (!any) throw std::invalid_argument("circ_norm_generic: empty family");
  return best;
}

std::vector<PairTerm> greedy_l1_decompose(const FrequencyVector& y) {
  const int n = y.n();
  Vec v(y.entries());
  const double scale = vec_norm_inf(v);
  const double zero_tol = scale * 1e-14;
  std::vector<PairTerm> terms;
  for (int step = 0; step < n; ++step) {
    // smallest-magnitude nonzero entry
    int i = -1;
    for (int k = 0; k < n; ++k) {
      if (std::fabs(v[k]) <= zero_tol) continue;
      if (i < 0 || std::fabs(v[k]) < std::fabs(v[i])) i = k;
    }
    if (i < 0) break;
    // opposite-sign partner; largest magnitude, lowest index on ties
    int j = -1;
    for (int k = 0; k < n; ++k) {
      if (k == i || std::fabs(v[k]) <= zero_tol) continue;
      if (std::signbit(v[k]) == std::signbit(v[i])) continue;
      if (j < 0 || std::fabs(v[k]) > std::fabs(v[j])) j = k;
    }
    if (j < 0) break;  // numerically exhausted (residual mean-zero noise)
    const double c = std::fabs(v[i]);
    if (v[i] > 0) {
      terms.push_back({c, i, j});
      v[j] += c;
    } else {
      terms.push_back({c, j, i});
      v[j] -= c;
    }
    v[i] = 0.0;
  }
  return terms;
}

}  // namespace kuramoto
