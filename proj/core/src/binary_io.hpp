#pragma once

// Little-endian primitives for the "IKA*" binary formats. Values are packed
// byte by byte so files written on any host are identical.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "ika/errors.hpp"

namespace ika::detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

inline void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline void require(std::istream& in, const std::string& what) {
  if (!in) throw IoError(IoError::Kind::Truncated, "read: truncated " + what);
}

inline std::uint32_t get_u32(std::istream& in, const std::string& what) {
  std::array<unsigned char, 4> b;
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  require(in, what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(std::istream& in, const std::string& what) {
  std::array<unsigned char, 8> b;
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  require(in, what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline double get_f64(std::istream& in, const std::string& what) {
  return std::bit_cast<double>(get_u64(in, what));
}

inline void put_magic(std::ostream& out, const char (&magic)[5]) {
  out.write(magic, 4);
}

inline void check_magic(std::istream& in, const char (&magic)[5], const std::string& format) {
  char buf[4];
  in.read(buf, 4);
  if (!in || std::memcmp(buf, magic, 4) != 0) {
    throw IoError(IoError::Kind::BadMagic, format + ": bad magic");
  }
}

inline void check_version(std::istream& in, std::uint32_t expected, const std::string& format) {
  const std::uint32_t v = get_u32(in, format + " version");
  if (v != expected) {
    throw IoError(IoError::Kind::BadVersion,
                  format + ": unsupported version " + std::to_string(v));
  }
}

// Reads must consume the file exactly; trailing bytes mean the size header
// and the payload disagree.
inline void check_eof(std::istream& in, const std::string& format) {
  in.peek();
  if (!in.eof()) {
    throw IoError(IoError::Kind::Malformed, format + ": trailing bytes after payload");
  }
}

}  // namespace ika::detail
