#ifndef PILTZ_CONFIG_HPP
#define PILTZ_CONFIG_HPP

#include <optional>

#include "piltz/numberfield.hpp"

namespace piltz::config {

// data the class number formula needs; supplied, not computed
struct ClassNumberData {
    double h = 1.0;
    double regulator = 1.0;
    int roots_of_unity = 2;
};

struct FieldConfig {
    nf::NumberFieldSpec spec;
    std::optional<ClassNumberData> class_number_data;
    std::optional<std::vector<std::vector<int>>> galois_generators;
};

// JSON schema:
// {
//   "label": "Q(i)",
//   "coeffs": [1, 0, 1],                  // ascending, monic
//   "D": 4,                               // optional discriminant override
//   "class_number_data": {"h": 1, "regulator": 1.0, "roots_of_unity": 4},
//   "galois_generators": [[2,1]],         // one-line notation, 1-based
//   "local_splitting": {"2": [[1,2]]}     // p -> [[f_i, e_i], ...]
// }
FieldConfig parse_field_config(const std::string& json_text);
FieldConfig load_field_config(const std::string& path);

double class_number_residue(const nf::NumberFieldSpec& spec,
                            const ClassNumberData& cnd);

}  // namespace piltz::config

#endif
