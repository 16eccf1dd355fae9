#pragma once

#include "painleve_d/algebra.hpp"

namespace pd {

struct HeisenbergElement {
    int k = 0;      // z power
    int l = 1;      // odd, 1..2n+1
    int which = 1;  // 1 or 2
    LoopMatrix<Rational> value;
    int declared_degree(int n) const { return (2 * n + 2) * k + l; }
};

// degree-one cyclic elements Lambda_{1,1}, Lambda_{1,2}
HeisenbergElement lambda_one(int n, int which);

// z^k (Lambda_{1,which})^l
HeisenbergElement lambda_general(int n, int k, int l, int which);

// every element with k in ks, odd l, which in {1,2}
std::vector<HeisenbergElement> heisenberg_family(int n, const std::vector<int>& ks);

}  // namespace pd
