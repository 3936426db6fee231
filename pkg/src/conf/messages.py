LOOP_EDGE = "Loop edge {edge}: an event graph has no loops"
VERTEX_OUT_OF_RANGE = "Edge {edge} has a vertex outside 1..{n}"
BELOW_MINIMUM = "{name} needs n >= {minimum}, got {n}"
REPEATED_GLUE_VERTEX = "Vertex {vertex} repeated in the gluing list of graph {side}"
GLUE_LENGTH_MISMATCH = "Gluing lists have different lengths"
EDGE_NOT_IN_GRAPH = "Edge {edge} is not an edge of the graph"
NOT_AN_AUTOMORPHISM = "Permutation {perm} is not an automorphism"
LIMIT_EXCEEDED = "{what} limited to {limit}, got {size}; raise the limit or pass --allow-large"
PARTIAL_LABELLING = "Labelling has {size} values, graph has {expected} edges"
MISSING_VERTEX_LABEL = "Vertex labelling has {size} labels, graph has {expected} vertices"
NOT_BINARY = "Edge labelling values must be 0 or 1, got {value}"
WEIGHT_OUT_OF_RANGE = "Edge weight {value} outside [0, 1]"
DIMENSION_MISMATCH = "Dimension mismatch: expected {expected}, got {size}"
EMPTY_POINT_LIST = "Facet enumeration needs at least one point"
ZERO_INEQUALITY = "Inequality with all-zero coefficients"
MISSING_HREP = "Polytope has no H-representation"
UNKNOWN_COORDINATE = "Unknown coordinate {coord}"
STATE_COUNT_MISMATCH = "{size} states given for a graph with {expected} vertices"
STATE_NOT_NORMALIZED = "State {index} has norm {norm}, expected 1"
STATE_DIMENSION = "State {index} has dimension {size}, expected {expected}"
BAD_DIMENSION = "Hilbert space dimension must be >= {minimum}, got {dim}"
ZERO_BUDGET = "Search budget must be positive"
DISTRIBUTION_NEGATIVE = "Distribution {index} has a negative entry"
DISTRIBUTION_SUM = "Distribution {index} sums to {total}, expected 1"
DISTRIBUTION_LENGTH = "Distribution {index} has {size} entries, ontic space has {expected}"
DISTRIBUTION_COUNT = "{size} distributions given for a graph with {expected} vertices"
UNKNOWN_WITNESS = "Unknown witness state set {name}"
UNKNOWN_FAMILY = "Unknown inequality family {name}"
FILE_FORMAT = "{file}:{line}: {detail}"
UNKNOWN_EXTENSION = "Cannot infer the format of {file} from its extension"
RECORD_NOT_FOUND = "Not found"
MISSING_STATES = "Give either explicit states or the name of a witness state set"
API_GREETING = "Event graph polytopes API"
NEGATIVE_SEED = "Seed must be a non-negative integer, got {seed}"
