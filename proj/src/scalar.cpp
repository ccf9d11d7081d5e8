#include "planarlie/scalar.hpp"

#include <stdexcept>

namespace planarlie {

GaussianRational GaussianRational::inverse() const {
    mpq_class n = norm2();
    if (n == 0) throw std::domain_error("division by zero GaussianRational");
    return {re / n, mpq_class(-im) / n};
}

std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out = rational_str(re);
    if (im != 0) {
        std::string imabs;
        mpq_class a = abs(im);
        if (a != 1) imabs = rational_str(a) + "*i";
        else imabs = "i";
        if (out.empty()) {
            out = (im < 0 ? "-" : "") + imabs;
        } else {
            out += (im < 0 ? "-" : "+") + imabs;
        }
    }
    return out;
}

}  // namespace planarlie
