#include "nnv/network_io.hpp"

#include <fstream>
#include <sstream>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

// Reads logical lines: strips comments and whitespace, skips blanks,
// tracks the physical line number for diagnostics.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            auto first = raw.find_first_not_of(" \t\r\n");
            if (first == std::string::npos) continue;
            auto last = raw.find_last_not_of(" \t\r\n");
            out = raw.substr(first, last - first + 1);
            return true;
        }
        return false;
    }

    std::string require(const std::string& what) {
        std::string out;
        if (!next(out)) throw ParseError("unexpected end of file, expected " + what, line_);
        return out;
    }

    int line() const { return line_; }

private:
    std::istream& in_;
    int line_ = 0;
};

std::vector<double> parse_numbers(const std::string& text, int line) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            size_t used = 0;
            double v = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + token + "'", line);
        }
    }
    if (out.empty()) throw ParseError("expected comma-separated numbers", line);
    return out;
}

}  // namespace

Network read_network(std::istream& in) {
    LineReader reader(in);

    std::vector<double> widths_raw = parse_numbers(reader.require("layer widths"), reader.line());
    std::vector<int> widths;
    for (double w : widths_raw) {
        if (w < 1 || w != static_cast<int>(w))
            throw ParseError("layer widths must be positive integers", reader.line());
        widths.push_back(static_cast<int>(w));
    }
    if (widths.size() < 2) throw ParseError("need at least input and output widths", reader.line());

    std::vector<Layer> layers;
    for (size_t i = 1; i < widths.size(); ++i) {
        std::string act_name = reader.require("activation name");
        Activation act;
        if (act_name == "relu") act = Activation::ReLU;
        else if (act_name == "id") act = Activation::Id;
        else throw ParseError("unknown activation '" + act_name + "'", reader.line());

        const int rows = widths[i], cols = widths[i - 1];
        Mat W(rows, cols);
        for (int r = 0; r < rows; ++r) {
            std::vector<double> vals = parse_numbers(reader.require("weight row"), reader.line());
            if (static_cast<int>(vals.size()) != cols)
                throw ParseError("expected " + std::to_string(cols) + " weights, got " +
                                     std::to_string(vals.size()),
                                 reader.line());
            for (int c = 0; c < cols; ++c) W(r, c) = vals[c];
        }
        std::vector<double> bias = parse_numbers(reader.require("bias line"), reader.line());
        if (static_cast<int>(bias.size()) != rows)
            throw ParseError("expected " + std::to_string(rows) + " biases, got " +
                                 std::to_string(bias.size()),
                             reader.line());
        Vec b(rows);
        for (int r = 0; r < rows; ++r) b[r] = bias[r];
        layers.emplace_back(std::move(W), std::move(b), act);
    }

    std::string extra;
    if (reader.next(extra)) throw ParseError("unexpected trailing content", reader.line());
    return Network(std::move(layers));
}

Network read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open network file '" + path + "'");
    return read_network(in);
}

void write_network(std::ostream& out, const Network& net) {
    out << net.input_dim();
    for (const Layer& l : net.layers) out << ',' << l.out_dim();
    out << '\n';
    out.precision(17);
    for (const Layer& l : net.layers) {
        out << (l.is_relu() ? "relu" : "id") << '\n';
        for (int r = 0; r < l.out_dim(); ++r) {
            for (int c = 0; c < l.in_dim(); ++c) out << (c ? "," : "") << l.weights(r, c);
            out << '\n';
        }
        for (int r = 0; r < l.out_dim(); ++r) out << (r ? "," : "") << l.bias[r];
        out << '\n';
    }
}

}  // namespace nnv
