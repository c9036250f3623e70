#include "output.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace psigrh::cli {

Record& Record::real(const std::string& key, double v) {
  Field f;
  f.key = key;
  f.type = Field::Type::real;
  f.real_value = v;
  fields.push_back(std::move(f));
  return *this;
}

Record& Record::integer(const std::string& key, long long v) {
  Field f;
  f.key = key;
  f.type = Field::Type::integer;
  f.int_value = v;
  fields.push_back(std::move(f));
  return *this;
}

Record& Record::text(const std::string& key, const std::string& v) {
  Field f;
  f.key = key;
  f.type = Field::Type::text;
  f.text_value = v;
  fields.push_back(std::move(f));
  return *this;
}

Record& Record::blank(const std::string& key) {
  Field f;
  f.key = key;
  fields.push_back(std::move(f));
  return *this;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Field& f) {
  switch (f.type) {
    case Field::Type::real:
      return format_real(f.real_value);
    case Field::Type::integer:
      return std::to_string(f.int_value);
    case Field::Type::text:
      return csv_escape(f.text_value);
    case Field::Type::empty:
      return "";
  }
  return "";
}

}  // namespace

void Writer::emit(const Record& rec) {
  if (json_) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = rec.command;
    for (const auto& f : rec.fields) {
      switch (f.type) {
        case Field::Type::real:
          j[f.key] = f.real_value;
          break;
        case Field::Type::integer:
          j[f.key] = f.int_value;
          break;
        case Field::Type::text:
          j[f.key] = f.text_value;
          break;
        case Field::Type::empty:
          j[f.key] = nullptr;
          break;
      }
    }
    out_ << j.dump() << '\n';
    return;
  }
  if (!header_done_) {
    out_ << "schema_version,command";
    for (const auto& f : rec.fields) out_ << ',' << csv_escape(f.key);
    out_ << '\n';
    header_done_ = true;
  }
  out_ << kSchemaVersion << ',' << csv_escape(rec.command);
  for (const auto& f : rec.fields) out_ << ',' << csv_cell(f);
  out_ << '\n';
}

}  // namespace psigrh::cli
