#pragma once

// Matrix files.
//
// Text form: a header line "m n k t", then m lines of n characters from
// {0,1}.  Lines starting with '#' are comments, spaces and tabs inside a
// line are ignored, and the file must end with a newline.
//
// JSON form: {"m": .., "n": .., "k": .., "t": .., "rows": ["0110", ...]}.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MatrixFile {
    IncidenceMatrix matrix;
    std::size_t k = 1;
    std::size_t t = 1;
};

// `comments` are written as "# ..." lines after the header.
std::string to_text(const MatrixFile& file, const std::vector<std::string>& comments = {});
MatrixFile parse_matrix_text(std::string_view text);

std::string to_json(const MatrixFile& file);
MatrixFile parse_matrix_json(std::string_view text);

// Picks JSON when the first non-blank character is '{'.  Throws FormatError
// for unreadable files as well as malformed content.
MatrixFile read_matrix_file(const std::string& path);

}  // namespace cbc
