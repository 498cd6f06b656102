#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lps/lp_model.hpp"

namespace lps {

enum class SparsityClass { dense, s20, s60 };  // zero probability 0 / 0.2 / 0.6

struct GenSpec {
    int rows = 0;
    int cols = 0;
    SparsityClass sparsity = SparsityClass::dense;
    std::uint64_t seed = 0;
};

std::string class_name(SparsityClass c);

/// Random feasible LP family: A entries uniform on (0.01, 1] and
/// independently zeroed with the class probability (all-zero rows are
/// redrawn), costs uniform on (0, 1], and b := A.x_hat for a reference
/// point x_hat uniform on (0, 1]^n, so every instance is a feasible
/// equality system with b >= 0. The draw is a fixed function of the spec:
/// the same GenSpec always yields byte-identical output.
///
/// Throws DegenerateSpec when rows or cols is zero.
GeneralLP generate(const GenSpec& spec);

}  // namespace lps
