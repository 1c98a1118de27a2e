"""Values as printed in the published tables (eps = 2, a = 1/2, c = 2).

Kept verbatim, including two misprints; the tests that use them say which
cells are read through a correction and why.
"""

X_VALUES = ("0.30", "0.45", "0.55", "0.70")

# d_2k, k = 0..5, one tuple per x column
TABLE1 = {
    "0.30": (-0.94304503, 2.22692591e-1, -1.70235645e-2, -2.01563398e-3, 3.52259554e-4, 4.16738056e-5),
    "0.45": (-1.03364259, 2.22370609e-1, -1.44683556e-2, -2.01674811e-3, 2.80957497e-4, 4.39726773e-5),
    "0.55": (-1.08679035, 2.19071374e-1, -1.32197968e-2, -1.87396028e-3, 2.53010021e-4, 4.00222956e-5),
    "0.70": (-1.16314077, 2.10564977e-1, -1.11672668e-2, -1.50090398e-3, 2.26973127e-4, 2.82024739e-5),
}
# printed -1.11672668(-2); the digits 1672668 appear shifted by one place
TABLE1_CORRECTED = {("0.70", 2): -1.16726679e-2}

# relative errors, M = 0..5, keyed by (lambda, x)
TABLE2 = {
    (50, "0.30"): (2.306e-03, 5.331e-06, 3.099e-08, 3.878e-10, 3.989e-12, 9.809e-14),
    (50, "0.45"): (5.802e-04, 1.143e-06, 7.831e-09, 7.820e-11, 1.067e-12, 1.916e-14),
    (50, "0.55"): (9.799e-05, 1.790e-07, 1.248e-09, 1.207e-11, 1.665e-13, 2.964e-15),
    (50, "0.70"): (2.506e-08, 4.201e-11, 2.655e-13, 2.872e-15, 3.104e-17, 7.326e-19),
    (100, "0.30"): (1.103e-03, 1.270e-06, 3.724e-09, 2.304e-11, 1.206e-13, 1.455e-15),
    (100, "0.45"): (2.426e-04, 2.378e-07, 8.218e-10, 4.055e-12, 2.811e-14, 2.477e-16),
    (100, "0.55"): (1.861e-05, 1.692e-08, 5.947e-11, 2.843e-13, 1.993e-15, 1.741e-17),
    (100, "0.70"): (1.451e-12, 1.212e-15, 3.862e-18, 2.066e-20, 1.136e-22, 1.316e-24),
}

# Script-D_2k and d_2k at x = 0.50, k = 0..2
TABLE3_D = (0.75, -1.5625e-1, 9.765625e-2)
TABLE3_d = (-1.06066017, 2.20970869e-1, -1.38106793e-2)
# printed 9.76562500(-2); d_4 = -sqrt(2) D_4 in the same table fixes the exponent at -3
TABLE3_D_CORRECTED = {2: 9.765625e-3}

# relative errors at x = 0.50, M = 0..2, keyed by lambda
TABLE4 = {
    50: (2.826e-04, 5.346e-07, 3.724e-09),
    100: (9.620e-05, 9.050e-08, 3.182e-10),
    150: (5.151e-05, 3.229e-08, 7.582e-11),
}
