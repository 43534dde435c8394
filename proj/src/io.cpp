#include "zetalab/io.hpp"

#include <sys/stat.h>
#include <sys/types.h>

#include <cerrno>
#include <cstdio>
#include <cstring>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

void put_bytes(std::FILE* f, const unsigned char* p, std::size_t n,
               const std::string& path) {
  if (std::fwrite(p, 1, n, f) != n)
    throw format_error("short write to " + path);
}

// Explicit little-endian packing; memcpy of the host representation would
// be fine on every target we build on, but the cache files claim a byte
// order, so honor it.
void pack_u64(unsigned char out[8], std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = (unsigned char)(v >> (8 * i));
}

std::uint64_t unpack_u64(const unsigned char in[8]) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[i];
  return v;
}

}  // namespace

// --- writer -----------------------------------------------------------

ByteWriter::ByteWriter(const std::string& path) : path_(path) {
  f_ = std::fopen(path.c_str(), "wb");
  if (!f_) throw format_error("cannot open " + path + " for writing: " +
                              std::strerror(errno));
}

ByteWriter::~ByteWriter() {
  if (f_) std::fclose(f_);
}

void ByteWriter::close() {
  if (!f_) return;
  int rc = std::fclose(f_);
  f_ = nullptr;
  if (rc != 0) throw format_error("close failed for " + path_);
}

void ByteWriter::magic(const char tag[4]) {
  put_bytes(f_, reinterpret_cast<const unsigned char*>(tag), 4, path_);
}

void ByteWriter::u32(std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (unsigned char)(v >> (8 * i));
  put_bytes(f_, b, 4, path_);
}

void ByteWriter::u64(std::uint64_t v) {
  unsigned char b[8];
  pack_u64(b, v);
  put_bytes(f_, b, 8, path_);
}

void ByteWriter::f64(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  u64(bits);
}

void ByteWriter::u32_array(const std::uint32_t* p, std::size_t n) {
  unsigned char buf[8192 * 4];
  std::size_t i = 0;
  while (i < n) {
    std::size_t block = std::min<std::size_t>(8192, n - i);
    for (std::size_t j = 0; j < block; ++j)
      for (int k = 0; k < 4; ++k)
        buf[4 * j + k] = (unsigned char)(p[i + j] >> (8 * k));
    put_bytes(f_, buf, 4 * block, path_);
    i += block;
  }
}

void ByteWriter::f64_array(const double* p, std::size_t n) {
  // Buffered in 64 KiB blocks; per-element fwrite is the bottleneck for
  // multi-hundred-MB tables otherwise.
  unsigned char buf[8192 * 8];
  std::size_t i = 0;
  while (i < n) {
    std::size_t block = std::min<std::size_t>(8192, n - i);
    for (std::size_t j = 0; j < block; ++j) {
      std::uint64_t bits;
      std::memcpy(&bits, p + i + j, 8);
      pack_u64(buf + 8 * j, bits);
    }
    put_bytes(f_, buf, 8 * block, path_);
    i += block;
  }
}

// --- reader -----------------------------------------------------------

ByteReader::ByteReader(const std::string& path) : path_(path) {
  f_ = std::fopen(path.c_str(), "rb");
  if (!f_) throw format_error("cannot open " + path + ": " +
                              std::strerror(errno));
  std::fseek(f_, 0, SEEK_END);
  long sz = std::ftell(f_);
  std::fseek(f_, 0, SEEK_SET);
  size_ = sz < 0 ? 0 : (std::uint64_t)sz;
}

ByteReader::~ByteReader() {
  if (f_) std::fclose(f_);
}

namespace {
void get_bytes(std::FILE* f, unsigned char* p, std::size_t n,
               const std::string& path) {
  if (std::fread(p, 1, n, f) != n)
    throw format_error("truncated read from " + path);
}
}  // namespace

void ByteReader::expect_magic(const char tag[4]) {
  unsigned char b[4];
  get_bytes(f_, b, 4, path_);
  pos_ += 4;
  if (std::memcmp(b, tag, 4) != 0)
    throw format_error("bad magic in " + path_ + " (want " +
                       std::string(tag, 4) + ")");
}

std::uint32_t ByteReader::u32() {
  unsigned char b[4];
  get_bytes(f_, b, 4, path_);
  pos_ += 4;
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t ByteReader::u64() {
  unsigned char b[8];
  get_bytes(f_, b, 8, path_);
  pos_ += 8;
  return unpack_u64(b);
}

double ByteReader::f64() {
  std::uint64_t bits = u64();
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void ByteReader::u32_array(std::uint32_t* p, std::size_t n) {
  unsigned char buf[8192 * 4];
  std::size_t i = 0;
  while (i < n) {
    std::size_t block = std::min<std::size_t>(8192, n - i);
    get_bytes(f_, buf, 4 * block, path_);
    pos_ += 4 * block;
    for (std::size_t j = 0; j < block; ++j) {
      std::uint32_t v = 0;
      for (int k = 3; k >= 0; --k) v = (v << 8) | buf[4 * j + k];
      p[i + j] = v;
    }
    i += block;
  }
}

void ByteReader::f64_array(double* p, std::size_t n) {
  unsigned char buf[8192 * 8];
  std::size_t i = 0;
  while (i < n) {
    std::size_t block = std::min<std::size_t>(8192, n - i);
    get_bytes(f_, buf, 8 * block, path_);
    pos_ += 8 * block;
    for (std::size_t j = 0; j < block; ++j) {
      std::uint64_t bits = unpack_u64(buf + 8 * j);
      std::memcpy(p + i + j, &bits, 8);
    }
    i += block;
  }
}

std::uint64_t ByteReader::remaining() const {
  return size_ > pos_ ? size_ - pos_ : 0;
}

// --- misc -------------------------------------------------------------

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool file_exists(const std::string& path) {
  struct stat st{};
  return ::stat(path.c_str(), &st) == 0;
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw format_error("cannot open " + path);
  std::fseek(f, 0, SEEK_END);
  long sz = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  std::vector<unsigned char> out(sz < 0 ? 0 : (std::size_t)sz);
  std::size_t got = std::fread(out.data(), 1, out.size(), f);
  std::fclose(f);
  out.resize(got);
  return out;
}

void make_dirs(const std::string& path) {
  // mkdir -p, silently tolerating what already exists
  std::string cur;
  for (std::size_t i = 0; i <= path.size(); ++i) {
    if (i == path.size() || path[i] == '/') {
      if (!cur.empty() && cur != ".") {
        if (::mkdir(cur.c_str(), 0775) != 0 && errno != EEXIST)
          throw format_error("mkdir failed for " + cur + ": " +
                             std::strerror(errno));
      }
      if (i < path.size()) cur += '/';
    } else {
      cur += path[i];
    }
  }
}

}  // namespace zetalab
