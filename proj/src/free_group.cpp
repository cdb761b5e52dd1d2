#include "cdlab/free_group.hpp"

#include <cctype>
#include <cstdlib>
#include "cdlab/coverage.hpp"

namespace cdlab {

namespace {

void check_rank(int rank) {
  if (rank < 1) throw ConstructionError("free group rank must be >= 1");
}

void check_letter(int rank, int s) {
  if (s == 0 || std::abs(s) > rank)
    throw ConstructionError("letter " + std::to_string(s) + " out of range for rank " +
                            std::to_string(rank));
}

}  // namespace

FreeWord::FreeWord(int rank) : rank_(rank) { check_rank(rank); }

FreeWord::FreeWord(int rank, std::vector<int> letters) : rank_(rank), letters_(std::move(letters)) {
  check_rank(rank);
  for (size_t i = 0; i < letters_.size(); ++i) {
    check_letter(rank, letters_[i]);
    if (i > 0 && letters_[i] == -letters_[i - 1])
      throw ConstructionError("word is not reduced at position " + std::to_string(i));
  }
}

FreeWord FreeWord::reduce(int rank, const std::vector<int>& letters) {
  FreeWord w(rank);
  for (int s : letters) w.push(s);
  return w;
}

FreeWord FreeWord::parse(int rank, const std::string& text) {
  std::vector<int> letters;
  for (char c : text) {
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw ConstructionError(std::string("invalid letter '") + c + "'");
    const int s = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    letters.push_back(std::isupper(static_cast<unsigned char>(c)) ? -s : s);
  }
  return FreeWord(rank, std::move(letters));
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (int s : letters_) {
    const char c = static_cast<char>('a' + std::abs(s) - 1);
    out += s > 0 ? c : static_cast<char>(std::toupper(c));
  }
  return out;
}

void FreeWord::push(int letter) {
  check_letter(rank_, letter);
  if (!letters_.empty() && letters_.back() == -letter)
    letters_.pop_back();
  else
    letters_.push_back(letter);
}

FreeWord free_mul(const FreeWord& a, const FreeWord& b) {
  CDLAB_OP("free_mul");
  if (a.rank() != b.rank())
    throw ConstructionError("free_mul: rank mismatch " + std::to_string(a.rank()) + " vs " +
                            std::to_string(b.rank()));
  FreeWord out = a;
  for (int s : b.letters()) out.push(s);
  return out;
}

FreeWord free_inverse(const FreeWord& a) {
  CDLAB_OP("free_inverse");
  std::vector<int> letters(a.letters().rbegin(), a.letters().rend());
  for (int& s : letters) s = -s;
  return FreeWord(a.rank(), std::move(letters));
}

std::vector<FreeWord> free_ball(int rank, int radius) {
  CDLAB_OP("free_ball");
  check_rank(rank);
  if (radius < 0) throw ConstructionError("free_ball: radius must be >= 0");
  std::vector<FreeWord> ball{FreeWord(rank)};
  size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const size_t layer_end = ball.size();
    for (size_t i = layer_begin; i < layer_end; ++i)
      for (int g = 1; g <= rank; ++g)
        for (int s : {g, -g}) {
          const auto& w = ball[i].letters();
          if (!w.empty() && w.back() == -s) continue;
          auto next = w;
          next.push_back(s);
          ball.emplace_back(rank, std::move(next));
        }
    layer_begin = layer_end;
  }
  return ball;
}

long long free_ball_size(int rank, int radius) {
  if (rank == 1) return 1 + 2LL * radius;
  long long q = 2LL * rank - 1, pow = 1;
  for (int i = 0; i < radius; ++i) pow *= q;
  return 1 + 2LL * rank * (pow - 1) / (2LL * rank - 2);
}

int common_prefix_length(const FreeWord& a, const FreeWord& b) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  size_t i = 0;
  while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
  return static_cast<int>(i);
}

int free_distance(const FreeWord& a, const FreeWord& b) {
  return a.length() + b.length() - 2 * common_prefix_length(a, b);
}

}  // namespace cdlab
