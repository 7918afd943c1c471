#include "mhn/mnist.hpp"

#include "mhn/rng.hpp"

#include <zlib.h>

#include <fstream>
#include <numeric>
#include <string>

namespace mhn {

namespace {

uint32_t read_be32(const std::vector<uint8_t>& bytes, size_t offset) {
  return (static_cast<uint32_t>(bytes[offset]) << 24) |
         (static_cast<uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<uint32_t>(bytes[offset + 3]);
}

void write_be32(std::vector<uint8_t>& bytes, uint32_t value) {
  bytes.push_back(static_cast<uint8_t>(value >> 24));
  bytes.push_back(static_cast<uint8_t>(value >> 16));
  bytes.push_back(static_cast<uint8_t>(value >> 8));
  bytes.push_back(static_cast<uint8_t>(value));
}

}  // namespace

IdxImageFile parse_idx_images(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 16) {
    throw io_error("parse_idx_images: truncated header (" +
                   std::to_string(bytes.size()) + " bytes, need 16)");
  }
  IdxImageFile file;
  file.magic = read_be32(bytes, 0);
  if (file.magic != kIdxImageMagic) {
    throw io_error(
        "parse_idx_images: bad magic " + std::to_string(file.magic) +
        (file.magic == 2049 ? " (that is an IDX label file, not images)"
                            : " (expected 2051)"));
  }
  file.count = static_cast<int>(read_be32(bytes, 4));
  file.rows = static_cast<int>(read_be32(bytes, 8));
  file.cols = static_cast<int>(read_be32(bytes, 12));
  if (file.rows <= 0 || file.cols <= 0 || file.count < 0) {
    throw io_error("parse_idx_images: non-positive dimensions in header");
  }
  const size_t expected = static_cast<size_t>(file.count) *
                          static_cast<size_t>(file.rows) *
                          static_cast<size_t>(file.cols);
  if (bytes.size() - 16 != expected) {
    throw io_error("parse_idx_images: payload holds " +
                   std::to_string(bytes.size() - 16) + " bytes but header " +
                   "promises " + std::to_string(expected));
  }
  file.pixels.assign(bytes.begin() + 16, bytes.end());
  return file;
}

std::vector<uint8_t> serialize_idx_images(const IdxImageFile& file) {
  std::vector<uint8_t> bytes;
  bytes.reserve(16 + file.pixels.size());
  write_be32(bytes, file.magic);
  write_be32(bytes, static_cast<uint32_t>(file.count));
  write_be32(bytes, static_cast<uint32_t>(file.rows));
  write_be32(bytes, static_cast<uint32_t>(file.cols));
  bytes.insert(bytes.end(), file.pixels.begin(), file.pixels.end());
  return bytes;
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("read failed: " + path);
  return bytes;
}

std::vector<uint8_t> gunzip_bytes(const std::vector<uint8_t>& compressed) {
  z_stream stream{};
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) {
    throw io_error("gunzip_bytes: inflateInit2 failed");
  }
  stream.next_in = const_cast<Bytef*>(compressed.data());
  stream.avail_in = static_cast<uInt>(compressed.size());

  std::vector<uint8_t> out;
  std::vector<uint8_t> chunk(1 << 16);
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    stream.next_out = chunk.data();
    stream.avail_out = static_cast<uInt>(chunk.size());
    status = inflate(&stream, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&stream);
      throw io_error("gunzip_bytes: corrupt gzip stream (zlib status " +
                     std::to_string(status) + ")");
    }
    out.insert(out.end(), chunk.data(),
               chunk.data() + (chunk.size() - stream.avail_out));
  }
  const bool trailing = stream.avail_in != 0;
  inflateEnd(&stream);
  if (trailing) {
    throw io_error("gunzip_bytes: trailing data after the gzip stream");
  }
  return out;
}

IdxImageFile load_idx_images(const std::string& path) {
  std::vector<uint8_t> bytes = read_file_bytes(path);
  if (bytes.size() >= 2 && bytes[0] == 0x1F && bytes[1] == 0x8B) {
    bytes = gunzip_bytes(bytes);
  }
  return parse_idx_images(bytes);
}

PatternSet select_patterns(const IdxImageFile& file, int n, uint64_t seed,
                           PixelScale scale) {
  if (n < 1) throw validation_error("select_patterns: need n >= 1");
  if (n > file.count) {
    throw validation_error("select_patterns: requested " + std::to_string(n) +
                           " images but the file holds only " +
                           std::to_string(file.count));
  }

  // Full Fisher-Yates shuffle; taking a prefix of the permutation is
  // sampling without replacement and keeps selections nested across n.
  std::vector<int> perm(file.count);
  std::iota(perm.begin(), perm.end(), 0);
  SplitMix64 rng(seed);
  for (int i = file.count - 1; i > 0; --i) {
    const int j = static_cast<int>(
        rng.uniform_below(static_cast<uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }

  const Index d = static_cast<Index>(file.rows) * file.cols;
  const double factor = scale == PixelScale::unit_interval ? 1.0 / 255.0 : 1.0;
  Matrix x(d, n);
  for (int j = 0; j < n; ++j) {
    const size_t base = static_cast<size_t>(perm[j]) * d;
    for (Index i = 0; i < d; ++i) {
      x(i, j) = factor * static_cast<double>(file.pixels[base + i]);
    }
  }
  return PatternSet(std::move(x));
}

}  // namespace mhn
