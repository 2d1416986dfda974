#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "logsp/error.hpp"
#include "logsp/grid_field.hpp"

namespace logsp {

namespace {

constexpr char kMagic[4] = {'L', 'P', 'F', '1'};

template <class T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  is.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if (!is) fail(ErrorKind::Io, "truncated LPF1 stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_lpf(const std::filesystem::path& path, const Field& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put_le<std::uint64_t>(os, u.grid().n);
  put_le<double>(os, u.grid().L);
  for (double v : u.values()) put_le<double>(os, v);
  if (!os) fail(ErrorKind::Io, "write failed: " + path.string());
}

Field read_lpf(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) fail(ErrorKind::Io, "not an LPF1 file: " + path.string());
  const auto n = get_le<std::uint64_t>(is);
  const auto L = get_le<double>(is);
  Grid g;
  try {
    g = make_grid(L, static_cast<std::size_t>(n));
  } catch (const Error& e) {
    fail(ErrorKind::Io, std::string("bad LPF1 header: ") + e.what());
  }
  std::vector<double> values(g.size());
  for (double& v : values) v = get_le<double>(is);
  return Field(g, std::move(values));
}

}  // namespace logsp
