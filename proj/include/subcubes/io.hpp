#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subcubes/cube.hpp"

namespace subcubes {

/// Error with the 1-based input line it was found on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A parsed ".cubes" file: optional `n=<n> k=<k>` header, one subcube word
/// per line, '#' comments, blank lines ignored. `family` is empty only for
/// a file with neither header nor words.
struct CubesDocument {
  std::optional<Family> family;
  bool has_header = false;
};

CubesDocument read_cubes(std::istream& in);
CubesDocument read_cubes_file(const std::string& path);

/// As read_cubes but requires a determinable family.
Family read_family(std::istream& in);
Family read_family_file(const std::string& path);

void write_cubes(std::ostream& out, const Family& f, bool header = true);
void write_cubes_file(const std::string& path, const Family& f,
                      bool header = true);

/// Vertex lists use the same syntax with words over {0,1} only.
std::vector<Vertex> read_vertex_list(std::istream& in);
std::vector<Vertex> read_vertex_list_file(const std::string& path);
void write_vertex_list(std::ostream& out, const std::vector<Vertex>& vs);

}  // namespace subcubes
