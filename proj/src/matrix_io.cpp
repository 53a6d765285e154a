#include "cbc/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cbc {

namespace {

std::vector<std::string> row_strings(const IncidenceMatrix& matrix) {
    std::vector<std::string> rows(matrix.rows(), std::string(matrix.cols(), '0'));
    for (std::size_t c = 0; c < matrix.cols(); ++c)
        for (auto r : mask_indices(matrix.column(c))) rows[r][c] = '1';
    return rows;
}

MatrixFile assemble(std::size_t m, std::size_t n, std::size_t k, std::size_t t, const std::vector<std::string>& rows) {
    if (m < 1 || m > kMaxServers) throw FormatError("m must be between 1 and 64");
    if (n < 1) throw FormatError("n must be at least 1");
    if (k < 1 || k > n) throw FormatError("k must satisfy 1 <= k <= n");
    if (t < 1) throw FormatError("t must be at least 1");
    if (rows.size() != m)
        throw FormatError("header says " + std::to_string(m) + " rows, found " + std::to_string(rows.size()));
    std::vector<Mask> columns(n, 0);
    for (std::size_t r = 0; r < m; ++r) {
        if (rows[r].size() != n)
            throw FormatError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                              " entries, expected " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c) {
            const char ch = rows[r][c];
            if (ch == '1')
                columns[c] |= bit(r);
            else if (ch != '0')
                throw FormatError("row " + std::to_string(r + 1) + " contains '" + std::string(1, ch) + "'");
        }
    }
    for (std::size_t c = 0; c < n; ++c)
        if (columns[c] == 0) throw FormatError("column " + std::to_string(c + 1) + " is empty (unstorable item)");
    return MatrixFile{IncidenceMatrix(m, std::move(columns)), k, t};
}

}  // namespace

std::string to_text(const MatrixFile& file, const std::vector<std::string>& comments) {
    std::ostringstream out;
    out << file.matrix.rows() << ' ' << file.matrix.cols() << ' ' << file.k << ' ' << file.t << '\n';
    for (const auto& line : comments) out << "# " << line << '\n';
    for (const auto& row : row_strings(file.matrix)) out << row << '\n';
    return out.str();
}

MatrixFile parse_matrix_text(std::string_view text) {
    if (text.empty() || text.back() != '\n') throw FormatError("matrix file must end with a newline");
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        std::string line;
        for (char ch : text.substr(pos, end - pos))
            if (ch != ' ' && ch != '\t' && ch != '\r') line += ch;
        pos = end + 1;
        if (line.empty() || line.front() == '#') continue;
        lines.push_back(std::move(line));
    }
    if (lines.empty()) throw FormatError("missing header line");

    // The header is re-read from the raw text so that its fields stay separated.
    std::size_t m = 0, n = 0, k = 0, t = 0;
    {
        std::istringstream raw{std::string(text)};
        std::string line;
        while (std::getline(raw, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream fields(line);
            std::string extra;
            if (!(fields >> m >> n >> k >> t) || (fields >> extra))
                throw FormatError("header must be \"m n k t\"");
            break;
        }
    }
    lines.erase(lines.begin());
    return assemble(m, n, k, t, lines);
}

std::string to_json(const MatrixFile& file) {
    nlohmann::ordered_json j;
    j["m"] = file.matrix.rows();
    j["n"] = file.matrix.cols();
    j["k"] = file.k;
    j["t"] = file.t;
    j["rows"] = row_strings(file.matrix);
    return j.dump(2) + "\n";
}

MatrixFile parse_matrix_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const auto rows = j.at("rows").get<std::vector<std::string>>();
        return assemble(j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                        j.value("t", std::size_t{1}), rows);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad JSON matrix: ") + e.what());
    }
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
    return parse_matrix_text(text);
}

}  // namespace cbc
