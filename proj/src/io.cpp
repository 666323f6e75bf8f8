#include "subcubes/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subcubes {

namespace {

std::string strip(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t b = 0, e = line.size();
  while (b < e && is_space(line[b])) ++b;
  while (e > b && is_space(line[e - 1])) --e;
  return line.substr(b, e - b);
}

bool parse_header(const std::string& text, int& n, int& k) {
  std::istringstream ss(text);
  std::string a, b;
  if (!(ss >> a >> b)) return false;
  std::string rest;
  if (ss >> rest) return false;
  if (a.rfind("n=", 0) != 0 || b.rfind("k=", 0) != 0) return false;
  try {
    n = std::stoi(a.substr(2));
    k = std::stoi(b.substr(2));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

CubesDocument read_cubes(std::istream& in) {
  CubesDocument doc;
  std::optional<int> header_n, header_k;
  std::vector<Subcube> members;
  std::string raw;
  int line_no = 0;
  bool first_content = true;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string text = strip(raw);
    if (text.empty()) continue;
    if (first_content) {
      first_content = false;
      int hn = 0, hk = 0;
      if (parse_header(text, hn, hk)) {
        if (hn < 1 || hn > max_dim || hk < 0 || hk > hn)
          throw ParseError(line_no, "header dimensions out of range");
        header_n = hn;
        header_k = hk;
        doc.has_header = true;
        continue;
      }
    }
    Subcube c;
    try {
      c = parse_subcube(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (header_n && (c.n != *header_n || c.dim() != *header_k))
      throw ParseError(line_no, "word '" + text + "' does not match header n=" +
                                    std::to_string(*header_n) +
                                    " k=" + std::to_string(*header_k));
    if (!members.empty() &&
        (c.n != members.front().n || c.dim() != members.front().dim()))
      throw ParseError(line_no,
                       "word '" + text + "' has inconsistent dimensions");
    members.push_back(c);
  }
  if (header_n) {
    try {
      doc.family = Family(*header_n, *header_k, std::move(members));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  } else if (!members.empty()) {
    int n = members.front().n;
    int k = members.front().dim();
    try {
      doc.family = Family(n, k, std::move(members));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return doc;
}

CubesDocument read_cubes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_cubes(in);
}

Family read_family(std::istream& in) {
  CubesDocument doc = read_cubes(in);
  if (!doc.family)
    throw std::runtime_error(
        "file is empty and has no 'n=<n> k=<k>' header; dimensions unknown");
  return std::move(*doc.family);
}

Family read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_family(in);
}

void write_cubes(std::ostream& out, const Family& f, bool header) {
  if (header) out << "n=" << f.n() << " k=" << f.k() << "\n";
  for (const Subcube& c : f.members()) out << to_word(c) << "\n";
}

void write_cubes_file(const std::string& path, const Family& f, bool header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_cubes(out, f, header);
}

std::vector<Vertex> read_vertex_list(std::istream& in) {
  std::vector<Vertex> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string text = strip(raw);
    if (text.empty()) continue;
    try {
      out.push_back(parse_vertex(text));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (out.size() > 1 && out.back().n != out.front().n)
      throw ParseError(line_no, "vertex word length changed mid-file");
  }
  return out;
}

std::vector<Vertex> read_vertex_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_vertex_list(in);
}

void write_vertex_list(std::ostream& out, const std::vector<Vertex>& vs) {
  for (const Vertex& v : vs) out << to_word(v) << "\n";
}

}  // namespace subcubes
