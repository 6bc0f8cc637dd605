#pragma once

#include "sflab/common.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace sflab {

// Deterministic JSON emission: insertion-ordered keys, exact integers,
// reals printed to 12 significant digits.  Byte-stable across runs.
inline std::string json_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class JsonW {
public:
  JsonW() : out_("{") {}

  JsonW& num(const char* k, i64 v) {
    key(k);
    out_ += std::to_string(v);
    return *this;
  }
  JsonW& num(const char* k, u64 v) {
    key(k);
    out_ += std::to_string(v);
    return *this;
  }
  JsonW& num(const char* k, int v) { return num(k, static_cast<i64>(v)); }
  JsonW& real(const char* k, double v) {
    key(k);
    out_ += json_real(v);
    return *this;
  }
  JsonW& boolean(const char* k, bool v) {
    key(k);
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonW& str(const char* k, const std::string& v) {
    key(k);
    out_ += '"';
    for (char c : v) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
    return *this;
  }
  JsonW& raw(const char* k, const std::string& json) {
    key(k);
    out_ += json;
    return *this;
  }
  std::string close() {
    out_ += '}';
    return out_;
  }

private:
  void key(const char* k) {
    if (!first_) out_ += ',';
    first_ = false;
    out_ += '"';
    out_ += k;
    out_ += "\":";
  }
  std::string out_;
  bool first_ = true;
};

inline std::string json_u64_array(const std::vector<u64>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
  return out;
}

} // namespace sflab
