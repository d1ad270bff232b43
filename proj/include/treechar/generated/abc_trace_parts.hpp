#pragma once

// Generated by `treechar derive-r`. Do not edit.
// tr(ABC) for A = [[q, r], [(-1+q-q^2)/r, 1-q]], B = diag(i, -i), C = [[s, 1], [-1-s^2, -s]],
// as terms re + im*i times q^eq r^er s^es.

#include <cstdint>

namespace treechar::generated {

struct AbcTraceTerm {
  int eq, er, es;
  std::int64_t re, im;
};

inline constexpr AbcTraceTerm abc_trace_terms[] = {
    {0, -1, 0, 0, -1},
    {0, 0, 1, 0, 1},
    {0, 1, 0, 0, 1},
    {0, 1, 2, 0, 1},
    {1, -1, 0, 0, 1},
    {2, -1, 0, 0, -1},
};

}  // namespace treechar::generated
