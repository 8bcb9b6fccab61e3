#include "orgflow/csv.hpp"

#include <stdexcept>

namespace orgflow::csv {

std::vector<Row> read(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        Row row;
        row.line = line;
        std::string field;
        bool quoted_record = false;
        for (;;) {
            if (i < n && text[i] == '"') {
                quoted_record = true;
                ++i;
                for (;;) {
                    if (i >= n)
                        throw std::runtime_error("line " + std::to_string(row.line) + ": unterminated quote");
                    char c = text[i++];
                    if (c == '"') {
                        if (i < n && text[i] == '"') {
                            field.push_back('"');
                            ++i;
                            continue;
                        }
                        break;
                    }
                    if (c == '\n')
                        ++line;
                    field.push_back(c);
                }
            }
            while (i < n && text[i] != ',' && text[i] != '\n')
                field.push_back(text[i++]);
            if (!field.empty() && field.back() == '\r' && (i >= n || text[i] == '\n'))
                field.pop_back();
            row.fields.push_back(std::move(field));
            field.clear();
            if (i < n && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (i < n && text[i] == '\n') {
            ++i;
            ++line;
        }
        bool blank = !quoted_record && row.fields.size() == 1 && row.fields[0].empty();
        if (!blank)
            rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string{field};
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

} // namespace orgflow::csv
