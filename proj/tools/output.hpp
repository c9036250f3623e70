#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psigrh::cli {

inline constexpr const char* kSchemaVersion = "1";

// One output field; `empty` stands for an inapplicable optional (CSV: empty
// cell, JSON: null).
struct Field {
  enum class Type { real, integer, text, empty };
  std::string key;
  Type type = Type::empty;
  double real_value = 0;
  long long int_value = 0;
  std::string text_value;
};

struct Record {
  std::string command;
  std::vector<Field> fields;

  explicit Record(std::string cmd) : command(std::move(cmd)) {}
  Record& real(const std::string& key, double v);
  Record& integer(const std::string& key, long long v);
  Record& text(const std::string& key, const std::string& v);
  Record& blank(const std::string& key);
};

std::string format_real(double v);  // 17 significant digits

// Streams records as CSV (header from the first record) or JSON lines.
class Writer {
 public:
  Writer(std::ostream& out, bool json) : out_(out), json_(json) {}
  void emit(const Record& rec);

 private:
  std::ostream& out_;
  bool json_;
  bool header_done_ = false;
};

}  // namespace psigrh::cli
