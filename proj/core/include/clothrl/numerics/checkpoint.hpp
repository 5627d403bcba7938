#pragma once

#include <iosfwd>
#include <string>

#include "clothrl/numerics/mlp.hpp"

namespace clothrl::numerics {

// Parameter checkpoint, format CKPT version 1:
//   magic "CRLCKPT1" (8 bytes)
//   u32 version
//   u8 hidden activation, u8 output activation, u16 reserved
//   u32 layer count N, then N x i32 layer sizes
//   per connection: weights row-major then biases, f64 little-endian
// Stream variants exist so larger files can embed parameter sets.

void write_param_set(std::ostream& out, const ParamSet& p);
ParamSet read_param_set(std::istream& in);

void save_checkpoint(const std::string& path, const ParamSet& p);
ParamSet load_checkpoint(const std::string& path);

// Raw little-endian scalar helpers shared by the file formats.
void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f64(std::ostream& out, double v);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
double read_f64(std::istream& in);

}  // namespace clothrl::numerics
