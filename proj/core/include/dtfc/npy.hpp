#ifndef DTFC_NPY_HPP
#define DTFC_NPY_HPP

#include <string>

#include "dtfc/tensor.hpp"

namespace dtfc {

// NPY v1.0 I/O restricted to little-endian float32, C order, 1-4 dims.
// load_npy rejects anything else with format-error and rejects
// non-finite payloads with data-error. source_tag is set from the
// filename stem.
FeatureTensor load_npy(const std::string& path);

// Writes values as <f4 (doubles are narrowed; tensors that came from
// load_npy or generate() round-trip bit-exactly).
void save_npy(const FeatureTensor& tensor, const std::string& path);

}  // namespace dtfc

#endif
