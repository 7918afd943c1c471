#pragma once

// IDX-format MNIST image ingest. The format is a big-endian header
//   offset 0:  magic (0x00000803 = 2051 for unsigned-byte image files)
//   offset 4:  image count
//   offset 8:  rows
//   offset 12: cols
// followed by count*rows*cols unsigned pixel bytes, row-major within each
// image. Gzip-compressed files are detected by the 0x1F 0x8B prefix and
// inflated transparently.

#include "mhn/types.hpp"

#include <cstdint>
#include <vector>

namespace mhn {

inline constexpr uint32_t kIdxImageMagic = 2051;

struct IdxImageFile {
  uint32_t magic = 0;
  int count = 0;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> pixels;  // count * rows * cols bytes
};

// Strict decode: wrong magic, zero dimensions, or a payload whose length
// disagrees with the header are all io_errors.
IdxImageFile parse_idx_images(const std::vector<uint8_t>& bytes);

// Exact inverse of parse_idx_images (round-trips byte-identically).
std::vector<uint8_t> serialize_idx_images(const IdxImageFile& file);

std::vector<uint8_t> read_file_bytes(const std::string& path);

// Inflate a single-member gzip stream.
std::vector<uint8_t> gunzip_bytes(const std::vector<uint8_t>& compressed);

// Read a file, inflate if gzip, parse as IDX images.
IdxImageFile load_idx_images(const std::string& path);

enum class PixelScale {
  unit_interval,  // divide by 255 -> [0, 1]
  raw             // keep 0..255
};

// Sample n images without replacement (seeded Fisher-Yates, order given by
// the sampled permutation) and flatten row-major into the columns of a
// d = rows*cols pattern matrix. With the same seed, the first patterns of a
// larger selection are exactly a smaller selection (nested prefixes).
PatternSet select_patterns(const IdxImageFile& file, int n, uint64_t seed,
                           PixelScale scale = PixelScale::unit_interval);

}  // namespace mhn
