#pragma once
// CSV emission: rectangular column series written RFC-4180 style (header
// row, CRLF line endings, quoting only where needed).  Floating-point
// fields use the shortest decimal form that round-trips exactly; complex
// columns split into <name>_re / <name>_im pairs.

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "rayfield/core.hpp"

namespace rayfield {

struct CsvColumn {
  enum class Kind { real, complex, text };
  std::string name;
  Kind kind = Kind::real;
  std::vector<double> re, im;      // real / complex payload
  std::vector<std::string> txt;    // text payload

  size_t rows() const { return kind == Kind::text ? txt.size() : re.size(); }
};

struct CsvSeries {
  std::vector<CsvColumn> columns;

  void add_real(std::string name, std::vector<double> values) {
    CsvColumn col;
    col.name = std::move(name);
    col.kind = CsvColumn::Kind::real;
    col.re = std::move(values);
    columns.push_back(std::move(col));
  }

  void add_complex(std::string name, const std::vector<cplx>& values) {
    CsvColumn col;
    col.name = std::move(name);
    col.kind = CsvColumn::Kind::complex;
    col.re.reserve(values.size());
    col.im.reserve(values.size());
    for (cplx v : values) {
      col.re.push_back(v.real());
      col.im.push_back(v.imag());
    }
    columns.push_back(std::move(col));
  }

  void add_text(std::string name, std::vector<std::string> values) {
    CsvColumn col;
    col.name = std::move(name);
    col.kind = CsvColumn::Kind::text;
    col.txt = std::move(values);
    columns.push_back(std::move(col));
  }

  size_t rows() const {
    size_t n = columns.empty() ? 0 : columns.front().rows();
    for (const CsvColumn& c : columns)
      require(c.rows() == n, "CsvSeries: columns have unequal lengths");
    return n;
  }
};

// shortest decimal form that parses back to the same double
inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc(), "format_double: conversion failed");
  return std::string(buf, p);
}

inline std::string csv_escape(const std::string& field) {
  const bool needs_quote = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quote) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string render_csv(const CsvSeries& series) {
  const size_t n = series.rows();  // validates rectangularity
  std::string out;
  bool first = true;
  for (const CsvColumn& c : series.columns) {
    if (c.kind == CsvColumn::Kind::complex) {
      out += (first ? "" : ",") + csv_escape(c.name + "_re") + "," +
             csv_escape(c.name + "_im");
    } else {
      out += (first ? "" : ",") + csv_escape(c.name);
    }
    first = false;
  }
  out += "\r\n";
  for (size_t row = 0; row < n; ++row) {
    first = true;
    for (const CsvColumn& c : series.columns) {
      if (!first) out += ',';
      first = false;
      switch (c.kind) {
        case CsvColumn::Kind::real: out += format_double(c.re[row]); break;
        case CsvColumn::Kind::complex:
          out += format_double(c.re[row]);
          out += ',';
          out += format_double(c.im[row]);
          break;
        case CsvColumn::Kind::text: out += csv_escape(c.txt[row]); break;
      }
    }
    out += "\r\n";
  }
  return out;
}

inline void emit_csv(const CsvSeries& series, const std::string& path) {
  const std::string body = render_csv(series);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

}  // namespace rayfield
