#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace zetalab {

// Little-endian binary file helpers for the cache formats. All multi-byte
// fields are written LSB first regardless of host order.

class ByteWriter {
 public:
  explicit ByteWriter(const std::string& path);
  ~ByteWriter();
  ByteWriter(const ByteWriter&) = delete;
  ByteWriter& operator=(const ByteWriter&) = delete;

  void magic(const char tag[4]);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void u32_array(const std::uint32_t* p, std::size_t n);
  void f64_array(const double* p, std::size_t n);
  void close();

 private:
  std::FILE* f_ = nullptr;
  std::string path_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::string& path);
  ~ByteReader();
  ByteReader(const ByteReader&) = delete;
  ByteReader& operator=(const ByteReader&) = delete;

  // throws format_error when the tag does not match
  void expect_magic(const char tag[4]);
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  void u32_array(std::uint32_t* p, std::size_t n);
  void f64_array(double* p, std::size_t n);
  std::uint64_t remaining() const;

 private:
  std::FILE* f_ = nullptr;
  std::string path_;
  std::uint64_t size_ = 0;
  std::uint64_t pos_ = 0;
};

// %.17g round-trips every finite double exactly through parse.
std::string g17(double v);

bool file_exists(const std::string& path);
std::vector<unsigned char> slurp(const std::string& path);
void make_dirs(const std::string& path);

}  // namespace zetalab
