#include "nnr/matrix_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nnr {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// SAX handler for the matrix schema. Numeric tokens are re-parsed from their
// raw text so decimals like 0.1 stay exact instead of rounding through double.
struct MatrixSax : nlohmann::json_sax<nlohmann::json> {
  enum class Key { None, Rows, Cols, Data, Normalize } active = Key::None;
  int object_depth = 0;
  int data_depth = 0;  // 0 outside "data", 1 in the outer array, 2 in a row
  long rows = -1, cols = -1;
  bool normalize = false;
  std::vector<std::vector<Rational>> data;

  bool cell(const Rational& v) {
    if (active == Key::Data) {
      if (data_depth != 2) fail("FormatError", "matrix entries must sit in row arrays");
      data.back().push_back(v);
      return true;
    }
    if (active == Key::Rows) rows = static_cast<long>(to_double(v));
    if (active == Key::Cols) cols = static_cast<long>(to_double(v));
    active = Key::None;
    return true;
  }

  bool null() override { return true; }
  bool boolean(bool b) override {
    if (active == Key::Normalize) normalize = b;
    active = Key::None;
    return true;
  }
  bool number_integer(number_integer_t v) override { return cell(Rational(v)); }
  bool number_unsigned(number_unsigned_t v) override { return cell(Rational(v)); }
  bool number_float(number_float_t, const string_t& raw) override {
    return cell(parse_rational(raw));
  }
  bool string(string_t& s) override {
    if (active == Key::Data) return cell(parse_rational(s));
    active = Key::None;
    return true;
  }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override {
    ++object_depth;
    return true;
  }
  bool end_object() override {
    --object_depth;
    return true;
  }
  bool start_array(std::size_t) override {
    if (active == Key::Data) {
      ++data_depth;
      if (data_depth == 2) data.emplace_back();
      if (data_depth > 2) fail("FormatError", "matrix data nested too deep");
    }
    return true;
  }
  bool end_array() override {
    if (active == Key::Data) {
      --data_depth;
      if (data_depth == 0) active = Key::None;
    }
    return true;
  }
  bool key(string_t& k) override {
    if (object_depth == 1) {
      if (k == "rows")
        active = Key::Rows;
      else if (k == "cols")
        active = Key::Cols;
      else if (k == "data")
        active = Key::Data;
      else if (k == "normalize")
        active = Key::Normalize;
      else
        active = Key::None;
    }
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    fail("FormatError", "JSON parse error at " + std::to_string(pos) + ": " + ex.what());
  }
};

}  // namespace

Matrix parse_matrix_csv(const std::string& text, Backend backend) {
  std::istringstream in(text);
  return read_matrix_csv(in, backend);
}

Matrix read_matrix_csv(std::istream& in, Backend backend) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    std::vector<Rational> row;
    for (const auto& tok : split(line, ',')) row.push_back(parse_rational(tok));
    if (!rows.empty() && row.size() != rows.front().size()) fail("FormatError", "ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("FormatError", "empty CSV matrix");
  Matrix m = Matrix::from_rows(rows, Backend::Exact);
  return backend == Backend::Exact ? m : m.to_backend(Backend::Float);
}

std::string write_matrix_csv(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_rational(m.q(i, j));
    }
    out += '\n';
  }
  return out;
}

JsonMatrix parse_matrix_json(const std::string& text, Backend backend) {
  MatrixSax sax;
  nlohmann::json::sax_parse(text, &sax);
  if (sax.rows <= 0 || sax.cols <= 0) fail("FormatError", "matrix JSON needs positive rows/cols");
  if (static_cast<long>(sax.data.size()) != sax.rows)
    fail("FormatError", "matrix JSON row count mismatch");
  for (const auto& r : sax.data)
    if (static_cast<long>(r.size()) != sax.cols)
      fail("FormatError", "matrix JSON column count mismatch");
  Matrix m = Matrix::from_rows(sax.data, Backend::Exact);
  if (backend == Backend::Float) m = m.to_backend(Backend::Float);
  return {std::move(m), sax.normalize};
}

std::string write_matrix_json(const Matrix& m) {
  std::string out = "{\"rows\": " + std::to_string(m.rows()) +
                    ", \"cols\": " + std::to_string(m.cols()) + ", \"data\": [";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_rational(m.q(i, j));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

namespace {

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

Matrix load_matrix(const std::string& path, Backend backend) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("FileError", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (ends_with(path, ".json")) return parse_matrix_json(ss.str(), backend).matrix;
  return parse_matrix_csv(ss.str(), backend);
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("FileError", "cannot write '" + path + "'");
  if (ends_with(path, ".json"))
    out << write_matrix_json(m) << '\n';
  else
    out << write_matrix_csv(m);
}

}  // namespace nnr
