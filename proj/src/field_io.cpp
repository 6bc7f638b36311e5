#include "cgl/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace cgl::io {

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <typename T>
T get(std::istream& in) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits = 0;
  in.read(reinterpret_cast<char*>(&bits), 8);
  if (!in) throw std::runtime_error("field io: truncated file");
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void put_header(std::ostream& out, const Grid& g) {
  put<std::int64_t>(out, g.dim);
  for (int a = 0; a < g.dim; ++a) put<std::int64_t>(out, g.n[a]);
}

void check_header(std::istream& in, const Grid& g, const std::string& path) {
  const auto dim = get<std::int64_t>(in);
  if (dim != g.dim)
    throw std::runtime_error(path + ": dimension mismatch with grid");
  for (int a = 0; a < g.dim; ++a)
    if (get<std::int64_t>(in) != g.n[a])
      throw std::runtime_error(path + ": shape mismatch with grid");
}

void put_arrays(std::ostream& out, const Field& f) {
  for (Index i = 0; i < f.size(); ++i) put(out, f.u1[i]);
  for (Index i = 0; i < f.size(); ++i) put(out, f.u2[i]);
}

Field get_arrays(std::istream& in, Index n) {
  Field f = Field::zero(n);
  for (Index i = 0; i < n; ++i) f.u1[i] = get<double>(in);
  for (Index i = 0; i < n; ++i) f.u2[i] = get<double>(in);
  return f;
}

}  // namespace

void write_field(const std::string& path, const Field& f, const Grid& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  put_header(out, g);
  put_arrays(out, f);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Field read_field(const std::string& path, const Grid& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  check_header(in, g, path);
  return get_arrays(in, g.size());
}

void write_series(const std::string& path, const TimeSeriesField& F, const Grid& g) {
  F.validate(g);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  put_header(out, g);
  put<std::int64_t>(out, static_cast<std::int64_t>(F.times.size()));
  put(out, F.t_end);
  for (double t : F.times) put(out, t);
  for (const auto& f : F.values) put_arrays(out, f);
  if (!out) throw std::runtime_error("write failed: " + path);
}

TimeSeriesField read_series(const std::string& path, const Grid& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  check_header(in, g, path);
  const auto count = get<std::int64_t>(in);
  if (count <= 0) throw std::runtime_error(path + ": empty series");
  TimeSeriesField F;
  F.t_end = get<double>(in);
  F.times.resize(static_cast<std::size_t>(count));
  for (auto& t : F.times) t = get<double>(in);
  F.values.reserve(F.times.size());
  for (std::int64_t i = 0; i < count; ++i)
    F.values.push_back(get_arrays(in, g.size()));
  F.validate(g);
  return F;
}

}  // namespace cgl::io
