#ifndef IVBMC_REPORT_HPP
#define IVBMC_REPORT_HPP

#include <memory>
#include <string>
#include <vector>

#include "ivbmc/box.hpp"

namespace ivbmc {

// Ordered key/value tree with two deterministic renderings: an indented
// text document and JSON with insertion-ordered keys. Values are stored
// pre-formatted so both renderings agree byte-for-byte across runs.
class Report {
 public:
  Report& put(const std::string& key, const std::string& value);
  Report& put(const std::string& key, const char* value);
  Report& put(const std::string& key, long long value);
  Report& put(const std::string& key, unsigned long long value);
  Report& put(const std::string& key, int value);
  Report& put(const std::string& key, double value);
  Report& put(const std::string& key, bool value);
  Report& child(const std::string& key);

  std::string to_text() const;
  std::string to_json() const;

  static std::string format_double(double v);

 private:
  enum class Type { String, Int, UInt, Float, Bool };
  struct Entry {
    std::string key;
    std::string value;  // pre-formatted, shared by both renderings
    Type type = Type::String;
    std::shared_ptr<Report> sub;
  };
  Report& put_typed(const std::string& key, std::string value, Type type);
  void render_text(std::string& out, int indent) const;
  void render_json(std::string& out) const;
  std::vector<Entry> entries_;
};

std::string format_interval(const Interval& iv);
std::string format_box(const IntBox& b);

}  // namespace ivbmc

#endif  // IVBMC_REPORT_HPP
