#include "clothrl/numerics/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "clothrl/common/errors.hpp"

namespace clothrl::numerics {

namespace {
constexpr char kMagic[8] = {'C', 'R', 'L', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

std::uint8_t activation_code(Activation a) { return static_cast<std::uint8_t>(a); }

Activation activation_from_code(std::uint8_t c) {
    if (c > 2) throw IoError("checkpoint: bad activation code");
    return static_cast<Activation>(c);
}
}  // namespace

void write_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw IoError("checkpoint: truncated read");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw IoError("checkpoint: truncated read");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

void write_param_set(std::ostream& out, const ParamSet& p) {
    out.write(kMagic, 8);
    write_u32(out, kVersion);
    char acts[4] = {char(activation_code(p.hidden)), char(activation_code(p.output)), 0, 0};
    out.write(acts, 4);
    write_u32(out, std::uint32_t(p.layer_sizes.size()));
    for (const int s : p.layer_sizes) write_u32(out, std::uint32_t(s));
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        for (const double v : p.weights[l].data()) write_f64(out, v);
        for (const double v : p.biases[l]) write_f64(out, v);
    }
    if (!out) throw IoError("checkpoint: write failed");
}

ParamSet read_param_set(std::istream& in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw IoError("checkpoint: bad magic (not a parameter checkpoint)");
    const std::uint32_t version = read_u32(in);
    if (version != kVersion)
        throw IoError("checkpoint: unsupported version " + std::to_string(version));
    char acts[4];
    in.read(acts, 4);
    if (!in) throw IoError("checkpoint: truncated header");
    const std::uint32_t n_layers = read_u32(in);
    if (n_layers < 2 || n_layers > 64) throw IoError("checkpoint: implausible layer count");

    ParamSet p;
    p.hidden = activation_from_code(std::uint8_t(acts[0]));
    p.output = activation_from_code(std::uint8_t(acts[1]));
    p.layer_sizes.resize(n_layers);
    for (auto& s : p.layer_sizes) {
        s = int(read_u32(in));
        if (s <= 0) throw IoError("checkpoint: non-positive layer size");
    }
    for (std::size_t l = 0; l + 1 < p.layer_sizes.size(); ++l) {
        Matrix w(std::size_t(p.layer_sizes[l + 1]), std::size_t(p.layer_sizes[l]));
        for (auto& v : w.data()) v = read_f64(in);
        std::vector<double> b(std::size_t(p.layer_sizes[l + 1]));
        for (auto& v : b) v = read_f64(in);
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    return p;
}

void save_checkpoint(const std::string& path, const ParamSet& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    write_param_set(out, p);
}

ParamSet load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    return read_param_set(in);
}

}  // namespace clothrl::numerics
