#include "qmd/qasm.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qmd {

namespace {

std::string fmt_angle(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "import_qasm: line " << line_no << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// "q[i]" -> i
int parse_qubit(const std::string& tok, std::size_t line_no) {
    const std::string t = strip(tok);
    if (t.size() < 4 || t.compare(0, 2, "q[") != 0 || t.back() != ']')
        parse_error(line_no, "expected qubit reference, got '" + t + "'");
    int idx = -1;
    const auto res = std::from_chars(t.data() + 2, t.data() + t.size() - 1, idx);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() - 1 || idx < 0)
        parse_error(line_no, "bad qubit index in '" + t + "'");
    return idx;
}

double parse_angle(const std::string& tok, std::size_t line_no) {
    const std::string t = strip(tok);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        parse_error(line_no, "bad angle '" + t + "'");
    return v;
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.n_qubits << "];\n";
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
                out << "h q[" << g.target << "];\n";
                break;
            case GateKind::X:
                out << "x q[" << g.target << "];\n";
                break;
            case GateKind::P:
                out << "p(" << fmt_angle(g.angle) << ") q[" << g.target << "];\n";
                break;
            case GateKind::Ry:
                out << "ry(" << fmt_angle(g.angle) << ") q[" << g.target << "];\n";
                break;
            case GateKind::CP:
                out << "cp(" << fmt_angle(g.angle) << ") q[" << g.control << "],q[" << g.target
                    << "];\n";
                break;
        }
    }
    return out.str();
}

Circuit import_qasm(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool saw_version = false;
    int n_qubits = -1;
    std::vector<GateOp> gates;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto pos = raw.find("//"); pos != std::string::npos) raw.erase(pos);
        std::string line = strip(raw);
        if (line.empty()) continue;
        if (line.back() != ';') parse_error(line_no, "missing ';'");
        line = strip(line.substr(0, line.size() - 1));
        if (line.rfind("OPENQASM", 0) == 0) {
            saw_version = true;
            continue;
        }
        if (line.rfind("include", 0) == 0) continue;
        if (line.rfind("qreg", 0) == 0) {
            const auto lb = line.find('[');
            const auto rb = line.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                parse_error(line_no, "malformed qreg");
            n_qubits = 0;
            const auto res = std::from_chars(line.data() + lb + 1, line.data() + rb, n_qubits);
            if (res.ec != std::errc{} || n_qubits < 1) parse_error(line_no, "bad register size");
            continue;
        }
        if (n_qubits < 0) parse_error(line_no, "gate before qreg declaration");
        // mnemonic [ '(' angle ')' ] operands
        std::string mnemonic, angle_str, operands;
        if (const auto par = line.find('('); par != std::string::npos) {
            const auto close = line.find(')', par);
            if (close == std::string::npos) parse_error(line_no, "missing ')'");
            mnemonic = strip(line.substr(0, par));
            angle_str = line.substr(par + 1, close - par - 1);
            operands = line.substr(close + 1);
        } else {
            const auto sp = line.find_first_of(" \t");
            if (sp == std::string::npos) parse_error(line_no, "missing operands");
            mnemonic = line.substr(0, sp);
            operands = line.substr(sp);
        }
        std::vector<std::string> ops;
        std::string cur;
        for (char ch : operands) {
            if (ch == ',') {
                ops.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!strip(cur).empty()) ops.push_back(cur);
        auto one_qubit = [&](GateKind kind, bool needs_angle) {
            if (ops.size() != 1) parse_error(line_no, "expected one operand");
            GateOp g;
            g.kind = kind;
            g.target = parse_qubit(ops[0], line_no);
            if (needs_angle) g.angle = parse_angle(angle_str, line_no);
            gates.push_back(g);
        };
        if (mnemonic == "h") {
            one_qubit(GateKind::H, false);
        } else if (mnemonic == "x") {
            one_qubit(GateKind::X, false);
        } else if (mnemonic == "p" || mnemonic == "u1") {
            one_qubit(GateKind::P, true);
        } else if (mnemonic == "ry") {
            one_qubit(GateKind::Ry, true);
        } else if (mnemonic == "cp" || mnemonic == "cu1") {
            if (ops.size() != 2) parse_error(line_no, "cp expects two operands");
            gates.push_back(GateOp::cp(parse_angle(angle_str, line_no),
                                       parse_qubit(ops[0], line_no),
                                       parse_qubit(ops[1], line_no)));
        } else {
            parse_error(line_no, "unsupported gate '" + mnemonic + "'");
        }
    }
    if (!saw_version) throw std::runtime_error("import_qasm: missing OPENQASM header");
    if (n_qubits < 0) throw std::runtime_error("import_qasm: missing qreg declaration");
    Circuit c(n_qubits);
    for (const auto& g : gates) c.append(g);
    return c;
}

}  // namespace qmd
