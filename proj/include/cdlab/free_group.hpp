#ifndef CDLAB_FREE_GROUP_HPP
#define CDLAB_FREE_GROUP_HPP

#include <string>
#include <vector>

#include "cdlab/types.hpp"

namespace cdlab {

/// Reduced word in the free group F_k. Letters are +-1..+-k; letter -s is
/// the inverse of generator s. No adjacent pair s, -s ever occurs.
class FreeWord {
public:
  /// Identity of F_rank.
  explicit FreeWord(int rank);
  /// Throws ConstructionError if a letter is out of range or the word is not
  /// reduced.
  FreeWord(int rank, std::vector<int> letters);

  /// Freely reduces an arbitrary letter sequence.
  static FreeWord reduce(int rank, const std::vector<int>& letters);
  /// Parses "a", "ab", "aB" (capital = inverse) or "" for the identity.
  static FreeWord parse(int rank, const std::string& text);

  int rank() const { return rank_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  std::string str() const;

  /// Right multiplication by a single letter, in place.
  void push(int letter);

  bool operator==(const FreeWord&) const = default;
  auto operator<=>(const FreeWord&) const = default;

private:
  int rank_;
  std::vector<int> letters_;
};

FreeWord free_mul(const FreeWord& a, const FreeWord& b);
FreeWord free_inverse(const FreeWord& a);
/// All reduced words of length <= radius, ordered by length then letters.
std::vector<FreeWord> free_ball(int rank, int radius);
/// Size of the ball: 1 + 2k((2k-1)^r - 1)/(2k-2), or 1 + 2r for k = 1.
long long free_ball_size(int rank, int radius);
/// Length of the longest common prefix.
int common_prefix_length(const FreeWord& a, const FreeWord& b);
/// Tree (word) distance |a^-1 b|.
int free_distance(const FreeWord& a, const FreeWord& b);

}  // namespace cdlab

#endif  // CDLAB_FREE_GROUP_HPP
