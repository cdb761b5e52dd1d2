#ifndef CDLAB_COVERAGE_HPP
#define CDLAB_COVERAGE_HPP

#include <atomic>
#include <set>
#include <string>
#include <vector>

namespace cdlab::coverage {

/// Names of every public operation that the experiment suite must reach.
const std::vector<std::string>& required_ops();

/// Clears the record and starts a new generation.
void reset();
unsigned generation();
void record(const char* op);
std::set<std::string> recorded();
/// Required ops not recorded since the last reset().
std::vector<std::string> missing();

}  // namespace cdlab::coverage

/// Marks the enclosing operation as exercised in the current generation.
/// Costs one relaxed atomic load per call after the first.
#define CDLAB_OP(name)                                                        \
  do {                                                                        \
    static std::atomic<unsigned> cdlab_seen_generation_{0};                   \
    const unsigned cdlab_gen_ = ::cdlab::coverage::generation();              \
    if (cdlab_seen_generation_.load(std::memory_order_relaxed) != cdlab_gen_) { \
      cdlab_seen_generation_.store(cdlab_gen_, std::memory_order_relaxed);    \
      ::cdlab::coverage::record(name);                                        \
    }                                                                         \
  } while (false)

#endif  // CDLAB_COVERAGE_HPP
