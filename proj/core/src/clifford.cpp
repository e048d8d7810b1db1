#include "loopint/clifford.hpp"

#include <algorithm>

namespace loopint {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(id);
  while (std::next_permutation(id.begin(), id.end()));
  return out;
}

}  // namespace loopint
