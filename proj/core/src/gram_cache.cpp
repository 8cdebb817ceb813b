#include "cavrcs/gram.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

namespace cavrcs {

namespace {

static_assert(std::endian::native == std::endian::little,
              "gram cache files are little-endian; add byte swapping for this platform");

constexpr char magic[8] = {'C', 'A', 'V', 'G', 'R', 'A', 'M', '1'};
constexpr uint64_t cache_version = 1;

struct CacheHeader {
  char magic[8];
  uint64_t version;
  uint64_t M, N;
  double kappa0, a, b;
  uint64_t quad_grid;
};
static_assert(sizeof(CacheHeader) == 8 + 8 * 7);

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string gram_cache_filename(int M, int N, double kappa0, double a, double b, int quad_grid) {
  return "gram_M" + std::to_string(M) + "_N" + std::to_string(N) + "_k" + fmt_double(kappa0) +
         "_a" + fmt_double(a) + "_b" + fmt_double(b) + "_q" + std::to_string(quad_grid) + ".bin";
}

bool gram_cache_load(const std::string& dir, int M, int N, double kappa0, double a, double b,
                     int quad_grid, GramTensor& out) {
  const auto path =
      std::filesystem::path(dir) / gram_cache_filename(M, N, kappa0, a, b, quad_grid);
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  CacheHeader h{};
  f.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!f || std::memcmp(h.magic, magic, 8) != 0 || h.version != cache_version ||
      h.M != static_cast<uint64_t>(M) || h.N != static_cast<uint64_t>(N) || h.kappa0 != kappa0 ||
      h.a != a || h.b != b || h.quad_grid != static_cast<uint64_t>(quad_grid))
    return false;
  out.M = M;
  out.N = N;
  const size_t n = static_cast<size_t>(out.side()) * out.side();
  for (auto* t : {&out.i1, &out.i2, &out.i3}) {
    t->resize(n);
    f.read(reinterpret_cast<char*>(t->data()), n * sizeof(std::complex<double>));
    if (!f) return false;
  }
  return f.get() == std::ifstream::traits_type::eof(); // reject trailing garbage
}

void gram_cache_store(const std::string& dir, const GramTensor& g, double kappa0, double a,
                      double b, int quad_grid) {
  std::filesystem::create_directories(dir);
  const auto final_path =
      std::filesystem::path(dir) / gram_cache_filename(g.M, g.N, kappa0, a, b, quad_grid);
  std::random_device rd;
  const auto tmp_path = final_path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("gram cache: cannot write " + tmp_path);
    CacheHeader h{};
    std::memcpy(h.magic, magic, 8);
    h.version = cache_version;
    h.M = g.M;
    h.N = g.N;
    h.kappa0 = kappa0;
    h.a = a;
    h.b = b;
    h.quad_grid = quad_grid;
    f.write(reinterpret_cast<const char*>(&h), sizeof h);
    const size_t n = static_cast<size_t>(g.side()) * g.side();
    for (const auto* t : {&g.i1, &g.i2, &g.i3})
      f.write(reinterpret_cast<const char*>(t->data()), n * sizeof(std::complex<double>));
    if (!f) throw std::runtime_error("gram cache: write failed for " + tmp_path);
  }
  std::filesystem::rename(tmp_path, final_path); // atomic publish
}

} // namespace cavrcs
