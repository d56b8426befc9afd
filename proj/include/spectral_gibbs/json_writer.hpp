#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spectral_gibbs {

/// Streaming JSON emitter with fixed formatting: two-space indentation,
/// fields in call order, doubles with 17 significant digits ("%.17g"),
/// non-finite doubles as null.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);

  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(unsigned v) { return value(static_cast<std::uint64_t>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(std::span<const double> values);
  JsonWriter& value(const std::vector<double>& values) {
    return value(std::span<const double>(values));
  }
  JsonWriter& null();

  template <typename T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }
  template <typename T>
  JsonWriter& field(std::string_view name, const std::optional<T>& v) {
    key(name);
    return v ? value(*v) : null();
  }
  JsonWriter& field(std::string_view name, std::span<const double> values);
  JsonWriter& field(std::string_view name, const std::vector<double>& values) {
    return field(name, std::span<const double>(values));
  }

  /// Terminates the document with a newline.
  void finish();

 private:
  void before_value();
  void write_string(std::string_view v);
  void newline();

  std::ostream& out_;
  struct Level {
    bool object;
    bool empty;
  };
  std::vector<Level> stack_;
  bool after_key_ = false;
};

/// "%.17g"; used for CSV cells as well.
std::string format_double(double v);

}  // namespace spectral_gibbs
