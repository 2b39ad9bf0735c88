#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "mantlevis/core/error.hpp"

namespace mantlevis {

using Bytes = std::vector<std::uint8_t>;

namespace detail {

template <typename T>
T byteswap_if_needed(T value) {
  if constexpr (std::endian::native == std::endian::little || sizeof(T) == 1) {
    return value;
  } else {
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }
}

}  // namespace detail

/// Little-endian append-only encoder.
class ByteWriter {
 public:
  template <typename T>
    requires std::is_arithmetic_v<T>
  void put(T value) {
    value = detail::byteswap_if_needed(value);
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }

  void put_raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  /// u16 length prefix followed by the UTF-8 bytes.
  void put_name(std::string_view s);

  template <typename T>
  void put_array(std::span<const T> values) {
    if constexpr (std::endian::native == std::endian::little) {
      const auto* p = reinterpret_cast<const std::uint8_t*>(values.data());
      bytes_.insert(bytes_.end(), p, p + values.size_bytes());
    } else {
      for (T v : values) put(v);
    }
  }

  std::size_t size() const { return bytes_.size(); }
  Bytes take() { return std::move(bytes_); }

 private:
  Bytes bytes_;
};

/// Little-endian decoder; every failure reports the offending byte offset.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T get() {
    require(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return detail::byteswap_if_needed(value);
  }

  std::string get_raw(std::size_t n) {
    require(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  std::string get_name() {
    const auto len = get<std::uint16_t>();
    return get_raw(len);
  }

  void require(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(ErrorCode::TruncatedFile, bytes_.size(),
                        "need " + std::to_string(n) + " more bytes, have " +
                            std::to_string(bytes_.size() - pos_));
    }
  }

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_{0};
};

inline void ByteWriter::put_name(std::string_view s) {
  if (s.size() > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "name longer than 65535 bytes");
  put(std::uint16_t(s.size()));
  put_raw(s);
}

Bytes read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace mantlevis
