// Copyright (c) stochcert contributors.
// SPDX-License-Identifier: Apache-2.0
#include "stochcert/synth/sos_export.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stochcert::synth {

namespace {

const char* const kSections[] = {"sets", "templates", "expression-15", "expression-16", "expression-17"};
const char* const kMultipliers[] = {"l0", "lu", "l", "lw", "lnu"};

std::string num(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string box_g(const std::vector<std::size_t>& vars, const std::vector<poly::Interval>& b,
                  const poly::VarSpace& space) {
    std::string out = "[";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& name = space.var(vars[i]).name;
        out += (i ? ", " : "") + name + " - " + num(b[i].lo) + ", " + num(b[i].hi) + " - " + name;
    }
    return out + "]";
}

std::string list(const std::vector<std::size_t>& vars, const poly::VarSpace& space) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        out += (i ? ", " : "") + space.var(vars[i]).name;
    }
    return out;
}

}  // namespace

std::string export_sos(const Subsystem& sub, const Template& tmpl, const MultiplierDegrees& degrees) {
    tmpl.validate(sub);
    const auto& space = *sub.space();
    const auto& R = sub.regions();
    const auto& d = sub.dims();
    const std::size_t modes = sub.mode_count();
    auto deg = [&](const std::string& name) {
        auto it = degrees.find(name);
        return it == degrees.end() ? tmpl.degree : it->second;
    };
    for (const auto& [name, _] : degrees) {
        if (std::find(std::begin(kMultipliers), std::end(kMultipliers), name) == std::end(kMultipliers)) {
            throw std::invalid_argument("unknown multiplier '" + name + "'");
        }
    }

    std::ostringstream o;
    o << "# stochcert SOS program\n";
    o << "# states=" << d.state << " inputs=" << d.input << " disturbances=" << d.disturbance
      << " outputs=" << d.output << " noises=" << d.noise << " modes=" << modes << "\n";
    o << "# every `sos` line must be a sum of squares in all free variables\n\n";

    o << "[sets]\n";
    o << "g0 = " << box_g(sub.state_vars(), R.X0, space) << "\n";
    for (std::size_t b = 0; b < R.Xu.size(); ++b) {
        o << "gu[" << b + 1 << "] = " << box_g(sub.state_vars(), R.Xu[b], space) << "\n";
    }
    o << "g = " << box_g(sub.state_vars(), R.X, space) << "\n";
    if (d.input > 0) {
        o << "gnu = " << box_g(sub.input_vars(), R.U, space) << "\n";
    }
    if (d.disturbance > 0) {
        o << "gw = " << box_g(sub.disturbance_vars(), R.W, space) << "\n";
    }

    o << "\n[templates]\n";
    o << "B_p(" << list(sub.state_vars(), space) << ") = sum_k b_p_k * m_k, m = monomials of degree <= "
      << tmpl.degree << " (" << poly::monomials_up_to(space.size(), sub.state_vars(), tmpl.degree).size()
      << " terms), p = 1.." << modes << "\n";
    for (std::size_t j = 0; j < d.input; ++j) {
        o << "lnu_" << j + 1 << "_p(x) = c_p_" << j + 1 << "_0";
        for (std::size_t k = 0; k < d.state; ++k) {
            o << " + c_p_" << j + 1 << "_" << k + 1 << "*" << space.var(sub.state_vars()[k]).name;
        }
        o << "\n";
    }
    if (d.disturbance + d.output > 0) {
        o << "X = symmetric " << d.disturbance + d.output << "x" << d.disturbance + d.output
          << " unknown, blocks X11 (" << d.disturbance << "x" << d.disturbance << "), X12, X22 ("
          << d.output << "x" << d.output << ")\n";
    }
    o << "h = [";
    for (std::size_t k = 0; k < sub.output().size(); ++k) {
        o << (k ? ", " : "") << sub.output()[k].to_string();
    }
    o << "]\n";
    o << "kappa_p in (0, 1); gamma_p, lambda_p, psi_p >= 0\n";
    const std::size_t ns = 2 * d.state;
    o << "multiplier l0 degree " << deg("l0") << " sos count " << ns << " vars (x)\n";
    o << "multiplier lu degree " << deg("lu") << " sos count " << ns << " per unsafe box vars (x)\n";
    o << "multiplier l degree " << deg("l") << " sos count " << ns << " vars (x, nu, w)\n";
    o << "multiplier lw degree " << deg("lw") << " sos count " << 2 * d.disturbance << " vars (x, nu, w)\n";
    o << "multiplier lnu degree " << deg("lnu") << " sos count " << 2 * d.input << " vars (x, nu, w)\n";
    for (std::size_t p = 0; p < modes; ++p) {
        o << "F_" << p + 1 << " = [";
        for (std::size_t k = 0; k < d.state; ++k) {
            o << (k ? ", " : "") << sub.mode(p).dynamics[k].to_string();
        }
        o << "]\n";
    }

    o << "\n[expression-15]\n";
    for (std::size_t p = 0; p < modes; ++p) {
        o << "sos mode=" << p + 1 << ": -B_" << p + 1 << "(x) - l0_" << p + 1 << "(x)'*g0(x) + gamma_" << p + 1
          << "\n";
    }
    o << "\n[expression-16]\n";
    for (std::size_t p = 0; p < modes; ++p) {
        for (std::size_t b = 0; b < R.Xu.size(); ++b) {
            o << "sos mode=" << p + 1 << " box=" << b + 1 << ": B_" << p + 1 << "(x) - lu_" << p + 1 << "_" << b + 1
              << "(x)'*gu[" << b + 1 << "](x) - lambda_" << p + 1 << "\n";
        }
    }
    o << "\n[expression-17]\n";
    const bool noisy = d.noise > 0;
    for (std::size_t p = 0; p < modes; ++p) {
        const std::string s = std::to_string(p + 1);
        std::string expect;
        std::size_t nonzero = 0;
        for (std::size_t q = 0; q < modes; ++q) {
            const double pi = sub.chain()(p, q);
            if (pi == 0.0) {
                continue;
            }
            const std::string inner = "B_" + std::to_string(q + 1) + "(F_" + s + "(x, nu, w" +
                                      (noisy ? ", sigma" : "") + "))";
            const std::string term = noisy ? "E[" + inner + "]" : inner;
            expect += (nonzero++ ? " + " : "") + (pi == 1.0 ? term : num(pi) + "*" + term);
        }
        o << "sos mode=" << s << ": -" << (nonzero > 1 ? "(" + expect + ")" : expect) << " + kappa_" << s << "*B_"
          << s << "(x) + psi_" << s;
        if (d.disturbance + d.output > 0) {
            o << " + [w; h(x)]'*X*[w; h(x)]";
        }
        if (d.input > 0) {
            o << " - sum_j (nu_j - lnu_j_" << s << "(x))";
        }
        o << " - l_" << s << "'*g(x)";
        if (d.disturbance > 0) {
            o << " - lw_" << s << "'*gw(w)";
        }
        if (d.input > 0) {
            o << " - lnu_" << s << "'*gnu(nu)";
        }
        o << "\n";
    }
    if (noisy) {
        o << "# E[.] is over sigma ~ N(0, I)\n";
    }
    return o.str();
}

SosSummary parse_sos_export(std::string_view text) {
    SosSummary out;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (std::find(std::begin(kSections), std::end(kSections), section) == std::end(kSections)) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            }
            if (out.constraints_per_section.count(section)) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": repeated section [" + section + "]");
            }
            out.sections.push_back(section);
            out.constraints_per_section[section] = 0;
            continue;
        }
        if (section.empty()) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": content outside a section");
        }
        if (line.rfind("sos ", 0) == 0) {
            if (section.rfind("expression-", 0) != 0) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": constraint outside an expression");
            }
            ++out.constraints_per_section[section];
            ++out.constraints;
        } else if (line.rfind("multiplier ", 0) == 0) {
            std::istringstream ls(line);
            std::string kw, name, degkw;
            unsigned dval = 0;
            if (!(ls >> kw >> name >> degkw >> dval) || degkw != "degree") {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed multiplier entry");
            }
            out.degrees[name] = dval;
        }
    }
    return out;
}

}  // namespace stochcert::synth
