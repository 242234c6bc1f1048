// Behr's presentation of Sp4(Z) on the root generators x_a, x_b, x_{a+b},
// x_{2a+b} and the Weyl elements w_a, w_b; words over these generators,
// evaluation into matrices, and decomposition of matrices into words.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spmono/linalg.hpp"

namespace spmono {

enum class Gen : std::uint8_t { xa = 0, xb, xab, x2ab, wa, wb };
inline constexpr int kGeneratorCount = 6;
inline constexpr std::array<Gen, kGeneratorCount> kAllGenerators = {Gen::xa, Gen::xb, Gen::xab,
                                                                   Gen::x2ab, Gen::wa, Gen::wb};

std::string_view name(Gen g);
std::optional<Gen> gen_from_name(std::string_view s);

struct Letter {
  Gen gen;
  std::int64_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Sequence of generator powers.  Adjacent letters always carry distinct
// generators and no exponent is zero.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  static Word generator(Gen g, std::int64_t exp = 1);

  void append(Gen g, std::int64_t exp);
  void append(const Word& w);

  Word inverse() const;
  Word pow(int n) const;
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  // Total length sum |exp|.
  std::uint64_t length() const;

  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const Word&, const Word&) = default;

  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

// Wire format: [["xa",2],["wb",-1],...].
Word word_from_json(const nlohmann::json& j);
nlohmann::json word_to_json(const Word& w);

using MatrixImages = std::array<ExactMatrix4, kGeneratorCount>;

const MatrixImages& behr_matrices();
const ExactMatrix4& behr_matrix(Gen g);

ExactMatrix4 evaluate(const Word& w, const MatrixImages& images = behr_matrices());

struct MonodromyWords {
  Word g1;  // N
  Word g2;  // M(d, k)
};

MonodromyWords monodromy_words(long d, long k);

// Word over the Behr generators evaluating to m; m must be integral symplectic.
Word decompose(const ExactMatrix4& m);

struct Presentation {
  std::vector<Gen> generators;
  std::vector<Word> relators;
  MatrixImages matrix_images;
};

// Validates that every relator evaluates to the identity.
Presentation presentation_from_json(const nlohmann::json& j);
Presentation load_presentation(const std::string& path);
nlohmann::json presentation_to_json(const Presentation& p);
std::string default_presentation_path();

// The bundled presentation (loaded once).
const Presentation& behr_presentation();

}  // namespace spmono
