#pragma once

// JSON encodings used by the command-line tool. Rationals are "p/q" strings,
// affine permutations use window notation, subsets are sorted index arrays.

#include <json.hpp>

#include <string>
#include <vector>

#include "twistlab/affperm.hpp"
#include "twistlab/cyclic.hpp"
#include "twistlab/positroid.hpp"

namespace twistlab::io {

using json = nlohmann::json;

json to_json(const Q& x);
json to_json(const Z& x);  // number when it fits in 64 bits, else a decimal string
json to_json(const CyclicMatrix& m);
json to_json(const QMatrix& m, int sign_exponent = 0);
json to_json(Subset s);
json to_json(const std::vector<Subset>& sets);
json to_json(const std::vector<AffinePermutation>& fs);
json to_json(const LeDiagram& d);

Q rational_from_json(const json& j);  // "p/q" string or integer
CyclicMatrix matrix_from_json(const json& j);

json read_file(const std::string& path);
// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace twistlab::io
