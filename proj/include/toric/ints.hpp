#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

// All arithmetic in this library is exact. Int/Rat are the only number
// types that ever touch geometry; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Lattice points of M and functionals of M*. Structurally identical;
// the aliases keep signatures honest about which side of the pairing a
// vector lives on.
using LatticeVector = std::vector<Int>;
using DualVector = std::vector<Int>;

// Precondition or data errors caused by the input (bad file, violated
// hypothesis, vector of wrong rank, ...). The CLI maps these to exit
// code 2; anything else escaping is an internal error (exit 1).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int dot(const std::vector<Int>& u, const std::vector<Int>& v) {
    if (u.size() != v.size())
        throw input_error("pairing of vectors of different rank");
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline bool is_zero(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

std::string vec_to_string(const std::vector<Int>& v);

} // namespace toric
