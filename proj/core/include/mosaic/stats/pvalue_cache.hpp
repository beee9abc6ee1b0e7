#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mosaic/stats/ci_test.hpp"

namespace mosaic {

/// Memoizes every test run against one CiTest and tracks, per unordered pair,
/// the largest p-value seen and the conditioning set that produced it.
class PValueCache {
 public:
  explicit PValueCache(const CiTest& test) : test_(&test) {}

  struct MaxRecord {
    double p = -1.0;
    std::vector<int> z;
  };

  CiOutcome test(int x, int y, std::vector<int> z);

  const CiTest& ci_test() const { return *test_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t tests_run() const { return runs_; }
  /// Nullptr if the pair was never tested.
  const MaxRecord* max_p(int x, int y) const;
  const std::map<std::pair<int, int>, MaxRecord>& max_records() const { return max_; }

 private:
  using Key = std::pair<std::pair<int, int>, std::vector<int>>;

  const CiTest* test_;
  std::map<Key, CiOutcome> entries_;
  std::map<std::pair<int, int>, MaxRecord> max_;
  std::size_t runs_ = 0;
};

}  // namespace mosaic
