#include "mosaic/stats/pvalue_cache.hpp"

#include <algorithm>

namespace mosaic {

CiOutcome PValueCache::test(int x, int y, std::vector<int> z) {
  std::sort(z.begin(), z.end());
  const std::pair<int, int> pair = std::minmax(x, y);
  Key key{pair, z};
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  const CiOutcome outcome = test_->test(pair.first, pair.second, z);
  ++runs_;
  entries_.emplace(std::move(key), outcome);
  if (!outcome.skipped) {
    auto& rec = max_[pair];
    if (outcome.p > rec.p) {
      rec.p = outcome.p;
      rec.z = std::move(z);
    }
  }
  return outcome;
}

const PValueCache::MaxRecord* PValueCache::max_p(int x, int y) const {
  auto it = max_.find(std::minmax(x, y));
  return it == max_.end() ? nullptr : &it->second;
}

}  // namespace mosaic
