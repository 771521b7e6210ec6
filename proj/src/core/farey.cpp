#include "adacycle/farey.hpp"

#include <algorithm>
#include <map>

namespace adacycle {

FareyWord::FareyWord(std::vector<FareyLetter> letters)
    : letters_(std::move(letters)) {
  if (letters_.empty())
    throw Error(ErrorCode::invalid_argument, "Farey word must be nonempty");
}

FareyWord FareyWord::parse(std::string_view text) {
  std::vector<FareyLetter> letters;
  for (char c : text) {
    if (c == 'L' || c == 'l')
      letters.push_back(FareyLetter::L);
    else if (c == 'R' || c == 'r')
      letters.push_back(FareyLetter::R);
    else if (c != ',' && c != ' ')
      throw Error(ErrorCode::parse,
                  "Farey words use the letters L and R, got '" +
                      std::string(text) + "'");
  }
  if (letters.empty()) throw Error(ErrorCode::parse, "empty Farey word");
  return FareyWord(std::move(letters));
}

bool FareyWord::is_degenerate() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](FareyLetter l) { return l == FareyLetter::L; });
}

std::size_t FareyWord::primitive_period() const noexcept {
  const std::size_t k = letters_.size();
  for (std::size_t p = 1; p < k; ++p) {
    if (k % p) continue;
    bool repeats = true;
    for (std::size_t i = p; i < k && repeats; ++i)
      repeats = letters_[i] == letters_[i - p];
    if (repeats) return p;
  }
  return k;
}

FareyWord FareyWord::rotated(std::size_t shift) const {
  std::vector<FareyLetter> out(letters_);
  std::rotate(out.begin(), out.begin() + static_cast<long>(shift % out.size()),
              out.end());
  return FareyWord(std::move(out));
}

FareyWord FareyWord::canonical() const {
  FareyWord best = *this;
  for (std::size_t s = 1; s < letters_.size(); ++s) {
    FareyWord candidate = rotated(s);
    if (candidate.letters_ < best.letters_) best = std::move(candidate);
  }
  return best;
}

std::string FareyWord::to_string() const {
  std::string out;
  for (auto l : letters_) out.push_back(l == FareyLetter::L ? 'L' : 'R');
  return out;
}

MoebiusMatrix MoebiusMatrix::of(FareyLetter letter) {
  // L(x) = x/(x+1), R(x) = 1/(x+1).
  if (letter == FareyLetter::L) return {1, 0, 1, 1};
  return {0, 1, 1, 1};
}

MoebiusMatrix MoebiusMatrix::operator*(const MoebiusMatrix& rhs) const {
  return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
          c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

MoebiusMatrix word_matrix(const FareyWord& word) {
  MoebiusMatrix m;
  for (std::size_t i = 0; i < word.size(); ++i)
    m = MoebiusMatrix::of(word[i]) * m;
  return m;
}

PeriodicPoint periodic_point(const FareyWord& word) {
  if (word.is_degenerate())
    throw Error(ErrorCode::precondition,
                "word " + word.to_string() + " is degenerate (fixed point 0)");
  const MoebiusMatrix m = word_matrix(word);
  // Fixed points solve c x^2 + (d - a) x - b = 0.
  const Integer disc = (m.d - m.a) * (m.d - m.a) + 4 * m.b * m.c;
  const auto [root, squarefree] = split_square(disc);
  // c >= 1 for every word over {L, R}.
  Rational centre(Integer(m.a - m.d), Integer(2 * m.c));
  Rational spread(root, Integer(2 * m.c));
  centre.canonicalize();
  spread.canonicalize();
  for (int s : {1, -1}) {
    QuadraticIrrational x(centre, Rational(s * spread), squarefree);
    if (x > QuadraticIrrational(0) && x <= QuadraticIrrational(1))
      return {x, word.primitive_period()};
  }
  throw Error(ErrorCode::precondition,
              "no fixed point in (0,1] for word " + word.to_string());
}

std::vector<OrbitEntry> enumerate_orbits(std::size_t k) {
  if (k < 1 || k > kMaxEnumerationLength)
    throw Error(ErrorCode::invalid_argument,
                "orbit enumeration needs 1 <= k <= " +
                    std::to_string(kMaxEnumerationLength));
  std::vector<OrbitEntry> out;
  for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
    std::vector<FareyLetter> letters(k);
    // Most significant bit first so numeric order equals lexicographic order.
    for (std::size_t i = 0; i < k; ++i)
      letters[i] = (mask >> (k - 1 - i)) & 1u ? FareyLetter::R : FareyLetter::L;
    FareyWord word(std::move(letters));
    if (!(word.canonical() == word)) continue;
    OrbitEntry entry{word, {}, word.is_degenerate(), word.primitive_period()};
    if (entry.degenerate)
      entry.values = word_orbit(word, QuadraticIrrational(0));
    else
      entry.values = word_orbit(word, periodic_point(word).value);
    out.push_back(std::move(entry));
  }
  return out;
}

UniquenessReport orbit_uniqueness(std::size_t max_k) {
  UniquenessReport report;
  report.max_k = max_k;
  std::map<std::string, std::string> seen;
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (const auto& entry : enumerate_orbits(k)) {
      if (!entry.primitive()) continue;
      ++report.primitive_orbits;
      for (const auto& v : entry.values) {
        ++report.values;
        auto [it, inserted] = seen.emplace(v.to_string(), entry.word.to_string());
        if (!inserted)
          report.collisions.emplace_back(it->second, entry.word.to_string());
      }
    }
  }
  return report;
}

std::string format_orbit_listing(const std::vector<OrbitEntry>& entries,
                                 bool exact) {
  std::string out;
  std::size_t primitive = 0;
  for (const auto& e : entries) {
    out += "[" + e.word.to_string() + "]";
    if (e.degenerate)
      out += " degenerate (fixed point 0)";
    else if (!e.primitive())
      out += " repeats [" + e.word.to_string().substr(0, e.primitive_period) + "]";
    else
      ++primitive;
    out += "\n";
    for (const auto& v : e.values) {
      out += "  ";
      if (exact)
        out += v.to_string() + "  " + v.to_decimal(50);
      else
        out += format_significant(v.to_double(), 12);
      out += "\n";
    }
  }
  out += "primitive orbits: " + std::to_string(primitive) + "\n";
  return out;
}

namespace {

template <typename T>
std::vector<Integer> expand(T x, std::size_t max_terms) {
  if (!(x > T(0)) || !(x < T(1)))
    throw Error(ErrorCode::domain, "continued fraction input must lie in (0,1)");
  std::vector<Integer> terms;
  while (terms.size() < max_terms && x != T(0)) {
    T inv = T(1) / x;
    Integer term = floor_of(inv);
    terms.push_back(term);
    x = inv - integer_as(term, x);
  }
  return terms;
}

}  // namespace

std::vector<Integer> cf_expansion(const Rational& x, std::size_t max_terms) {
  return expand<Rational>(x, max_terms);
}

std::vector<Integer> cf_expansion(const QuadraticIrrational& x,
                                  std::size_t max_terms) {
  return expand<QuadraticIrrational>(x, max_terms);
}

}  // namespace adacycle
