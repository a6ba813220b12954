import math

#: Gelfond's pointwise exponent ln 3 / ln 4.
LAMBDA = math.log(3) / math.log(4)
#: L1-norm exponent log2 sqrt(2 + sqrt 2).
THETA0 = math.log2(math.sqrt(2 + math.sqrt(2)))
#: Decay constant (1 - THETA0) / 2.
C_DECAY = (1 - THETA0) / 2
#: Default van der Corput shift exponent.
RHO_DEFAULT = C_DECAY / 200
#: Cutoff exponent in the Vaughan split, u = X**VAUGHAN_EXPONENT.
VAUGHAN_EXPONENT = 0.1
