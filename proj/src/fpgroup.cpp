#include "spmono/fpgroup.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

namespace spmono {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kGeneratorCount> kNames = {"xa", "xb", "xab", "x2ab", "wa", "wb"};

}  // namespace

std::string_view name(Gen g) { return kNames[static_cast<int>(g)]; }

std::optional<Gen> gen_from_name(std::string_view s) {
  for (int i = 0; i < kGeneratorCount; ++i)
    if (kNames[i] == s) return static_cast<Gen>(i);
  return std::nullopt;
}

Word::Word(std::initializer_list<Letter> letters) {
  for (const auto& l : letters) append(l.gen, l.exp);
}

Word Word::generator(Gen g, std::int64_t exp) {
  Word w;
  w.append(g, exp);
  return w;
}

void Word::append(Gen g, std::int64_t exp) {
  if (exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == g) {
    std::int64_t sum;
    if (__builtin_add_overflow(letters_.back().exp, exp, &sum))
      throw std::overflow_error("Word: exponent overflow");
    if (sum == 0)
      letters_.pop_back();
    else
      letters_.back().exp = sum;
    return;
  }
  letters_.push_back({g, exp});
}

void Word::append(const Word& w) {
  for (const auto& l : w.letters_) append(l.gen, l.exp);
}

Word Word::inverse() const {
  Word w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.append(it->gen, -it->exp);
  return w;
}

Word Word::pow(int n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word w;
  for (int i = 0; i < std::abs(n); ++i) w.append(base);
  return w;
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& l : letters_) n += l.exp < 0 ? std::uint64_t(-(l.exp + 1)) + 1 : std::uint64_t(l.exp);
  return n;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << name(letters_[i].gen);
    if (letters_[i].exp != 1) os << '^' << letters_[i].exp;
  }
  return os.str();
}

Word word_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("word must be a JSON array of [name, exponent] pairs");
  Word w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_number_integer())
      throw std::invalid_argument("malformed word letter: " + l.dump());
    const auto g = gen_from_name(l[0].get<std::string>());
    if (!g) throw std::invalid_argument("unknown generator '" + l[0].get<std::string>() + "'");
    const auto e = l[1].get<std::int64_t>();
    if (e == 0) throw std::invalid_argument("word letter with zero exponent");
    w.append(*g, e);
  }
  return w;
}

json word_to_json(const Word& w) {
  json j = json::array();
  for (const auto& l : w) j.push_back(json::array({std::string(name(l.gen)), l.exp}));
  return j;
}

const MatrixImages& behr_matrices() {
  static const MatrixImages images = {
      ExactMatrix4{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, -1, 1}},   // xa
      ExactMatrix4{{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}},    // xb
      ExactMatrix4{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},    // xab
      ExactMatrix4{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},    // x2ab
      ExactMatrix4{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},  // wa
      ExactMatrix4{{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}},   // wb
  };
  return images;
}

const ExactMatrix4& behr_matrix(Gen g) { return behr_matrices()[static_cast<int>(g)]; }

ExactMatrix4 evaluate(const Word& w, const MatrixImages& images) {
  ExactMatrix4 m = ExactMatrix4::identity();
  for (const auto& l : w) m = m * images[static_cast<int>(l.gen)].pow(l.exp);
  return m;
}

MonodromyWords monodromy_words(long d, long k) {
  if (d < 1 || k < 1) throw std::invalid_argument("monodromy_words: d and k must be positive");
  const Word wawb_inv2 = Word{{Gen::wa, 1}, {Gen::wb, 1}}.pow(-2);
  MonodromyWords out;
  out.g1 = Word::generator(Gen::xb);
  out.g2 = wawb_inv2;
  out.g2.append(Gen::x2ab, -d);
  out.g2.append(Gen::xb, k);
  out.g2.append(Gen::xa, -1);
  out.g2.append(Gen::wa, -3);
  out.g2.append(Gen::xa, -1);
  out.g2.append(wawb_inv2);
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition by symplectic row reduction.  Each elementary operation is a
// left multiplication by a power of a root element (or of w_a^2, w_b^2); the
// negative root elements are rewritten as conjugates of positive ones.

namespace {

class RowReducer {
 public:
  explicit RowReducer(const ExactMatrix4& m) {
    for (int i = 0; i < 16; ++i) a_[i] = m(i / 4, i % 4).get_num();
  }

  mpz_class& at(int r, int c) { return a_[r * 4 + c]; }

  // x2ab^t: row0 += t row2
  void x2ab(const mpz_class& t) {
    add_row(0, 2, t);
    record(Word::generator(Gen::x2ab, to_exp(t)));
  }
  // (x2ab^T)^t = wa^-1 wb^-1 xb^-t wb wa: row2 += t row0
  void x2ab_t(const mpz_class& t) {
    add_row(2, 0, t);
    record(Word{{Gen::wa, -1}, {Gen::wb, -1}, {Gen::xb, -to_exp(t)}, {Gen::wb, 1}, {Gen::wa, 1}});
  }
  // xb^t: row1 += t row3
  void xb(const mpz_class& t) {
    add_row(1, 3, t);
    record(Word::generator(Gen::xb, to_exp(t)));
  }
  // (xb^T)^t = wb xb^-t wb^-1: row3 += t row1
  void xb_t(const mpz_class& t) {
    add_row(3, 1, t);
    record(Word{{Gen::wb, 1}, {Gen::xb, -to_exp(t)}, {Gen::wb, -1}});
  }
  // xa^t: row0 += t row1, row3 -= t row2
  void xa(const mpz_class& t) {
    add_row(0, 1, t);
    add_row(3, 2, -t);
    record(Word::generator(Gen::xa, to_exp(t)));
  }
  // (xa^T)^t = wa xa^-t wa^-1: row1 += t row0, row2 -= t row3
  void xa_t(const mpz_class& t) {
    add_row(1, 0, t);
    add_row(2, 3, -t);
    record(Word{{Gen::wa, 1}, {Gen::xa, -to_exp(t)}, {Gen::wa, -1}});
  }
  // wa^2 = -I
  void negate_all() {
    for (auto& x : a_) x = -x;
    record(Word::generator(Gen::wa, 2));
  }
  // wb^2 = diag(1, -1, 1, -1)
  void negate_rows_1_3() {
    for (int c = 0; c < 4; ++c) {
      at(1, c) = -at(1, c);
      at(3, c) = -at(3, c);
    }
    record(Word::generator(Gen::wb, 2));
  }

  // Euclid on the entries (row_x, col) and (row_y, col) until the second is 0.
  template <typename OpX, typename OpY>
  void euclid(int row_x, int row_y, int col, OpX op_x, OpY op_y) {
    while (at(row_y, col) != 0) {
      mpz_class q = at(row_x, col) / at(row_y, col);
      if (q != 0) op_x(mpz_class(-q));
      if (at(row_x, col) == 0) {
        op_x(mpz_class(1));
        op_y(mpz_class(-1));
        break;
      }
      q = at(row_y, col) / at(row_x, col);
      op_y(mpz_class(-q));
    }
  }

  // Operations E_1, ..., E_k in the order applied.
  const std::vector<Word>& applied() const { return applied_; }

 private:
  static std::int64_t to_exp(const mpz_class& t) {
    if (!t.fits_slong_p()) throw std::overflow_error("decompose: exponent exceeds 64 bits");
    return t.get_si();
  }
  void add_row(int dst, int src, const mpz_class& t) {
    for (int c = 0; c < 4; ++c) at(dst, c) += t * at(src, c);
  }
  void record(Word w) { applied_.push_back(std::move(w)); }

  std::array<mpz_class, 16> a_;
  std::vector<Word> applied_;
};

}  // namespace

Word decompose(const ExactMatrix4& m) {
  if (!m.is_integral()) throw std::invalid_argument("decompose: matrix is not integral");
  if (!is_symplectic(m)) throw std::invalid_argument("decompose: matrix is not symplectic");

  RowReducer red(m);
  // First column to e1.
  red.euclid(0, 2, 0, [&](const mpz_class& t) { red.x2ab(t); }, [&](const mpz_class& t) { red.x2ab_t(t); });
  red.euclid(1, 3, 0, [&](const mpz_class& t) { red.xb(t); }, [&](const mpz_class& t) { red.xb_t(t); });
  red.euclid(0, 1, 0, [&](const mpz_class& t) { red.xa(t); }, [&](const mpz_class& t) { red.xa_t(t); });
  if (red.at(0, 0) == -1) red.negate_all();
  if (red.at(0, 0) != 1) throw std::logic_error("decompose: first column is not primitive");

  // Second column to e2; these operations fix e1.
  red.euclid(1, 3, 1, [&](const mpz_class& t) { red.xb(t); }, [&](const mpz_class& t) { red.xb_t(t); });
  if (red.at(1, 1) == -1) red.negate_rows_1_3();
  if (red.at(1, 1) != 1) throw std::logic_error("decompose: second column is not reducible");
  if (red.at(0, 1) != 0) red.xa(mpz_class(-red.at(0, 1)));

  // What is left is [[I, B], [0, I]] with B symmetric.
  auto exp_of = [](const mpz_class& t) {
    if (!t.fits_slong_p()) throw std::overflow_error("decompose: exponent exceeds 64 bits");
    return std::int64_t(t.get_si());
  };
  Word upper;
  upper.append(Gen::x2ab, exp_of(red.at(0, 2)));
  upper.append(Gen::xab, exp_of(red.at(0, 3)));
  upper.append(Gen::xb, exp_of(red.at(1, 3)));

  // E_k ... E_1 m = U, so m = E_1^-1 ... E_k^-1 U.
  Word result;
  for (const auto& e : red.applied()) result.append(e.inverse());
  result.append(upper);

  if (!(evaluate(result) == m)) throw std::logic_error("decompose: word does not evaluate to the input");
  return result;
}

// ---------------------------------------------------------------------------

Presentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw std::invalid_argument("presentation: expected an object with generators and relators");
  Presentation p;
  for (const auto& g : j.at("generators")) {
    const auto gen = gen_from_name(g.get<std::string>());
    if (!gen) throw std::invalid_argument("presentation: unknown generator " + g.dump());
    if (std::find(p.generators.begin(), p.generators.end(), *gen) != p.generators.end())
      throw std::invalid_argument("presentation: duplicate generator " + g.dump());
    p.generators.push_back(*gen);
  }
  if (p.generators.size() != kGeneratorCount)
    throw std::invalid_argument("presentation: expected " + std::to_string(kGeneratorCount) + " generators");
  p.matrix_images = behr_matrices();
  const auto& rels = j.at("relators");
  if (!rels.is_array()) throw std::invalid_argument("presentation: relators must be an array");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    Word w = word_from_json(rels[i]);
    if (!evaluate(w, p.matrix_images).is_identity())
      throw InvariantError("presentation: relator " + std::to_string(i) + " (" + w.str() +
                           ") does not evaluate to the identity");
    p.relators.push_back(std::move(w));
  }
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open presentation " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("presentation " + path + ": " + e.what());
  }
  return presentation_from_json(j);
}

json presentation_to_json(const Presentation& p) {
  json j;
  j["generators"] = json::array();
  for (auto g : p.generators) j["generators"].push_back(std::string(name(g)));
  j["relators"] = json::array();
  for (const auto& r : p.relators) j["relators"].push_back(word_to_json(r));
  return j;
}

std::string default_presentation_path() { return std::string(SPMONO_DATA_DIR) + "/behr_sp4.json"; }

const Presentation& behr_presentation() {
  static const Presentation p = load_presentation(default_presentation_path());
  return p;
}

}  // namespace spmono
