"""CLI invocations whose reports are frozen under tests/golden."""
from pathlib import Path

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "enumerate_A_1_1_3": ["enumerate", "--flavor", "A", "--m", "1", "--n", "1", "--d", "3", "--list"],
    "enumerate_Bjj_1_1_1": ["enumerate", "--flavor", "Bjj", "--m", "1", "--n", "1", "--d", "1", "--list"],
    "enumerate_Bii_1_1_1": ["enumerate", "--flavor", "Bii", "--m", "1", "--n", "1", "--d", "1", "--list"],
    "act_E1_A_2_2_2": ["act", "--flavor", "A", "--m", "2", "--n", "2", "--d", "2", "--side", "left",
                       "--generator", "E1", "--label", "[[0,0],[1,1]]"],
    "act_D1_A_2_2_2": ["act", "--flavor", "A", "--m", "2", "--n", "2", "--d", "2", "--side", "left",
                       "--generator", "D1", "--label", "[[1,0],[0,1]]"],
    "act_f0_coord_Bjj": ["act", "--flavor", "Bjj", "--m", "1", "--n", "1", "--d", "1", "--side", "left",
                         "--generator", "f0", "--label", "3E0,0", "--basis", "coord"],
    "verify_relations_A_2_2_2": ["verify", "--suite", "relations", "--flavor", "A", "--m", "2", "--n", "2",
                                 "--d", "2"],
    "verify_oracle_A_2_2_2": ["verify", "--suite", "oracle", "--flavor", "A", "--m", "2", "--n", "2",
                              "--d", "2", "--primes", "7,11,13,17"],
    "verify_decomposition_Bjj_1_1_1": ["verify", "--suite", "decomposition", "--flavor", "Bjj", "--m", "1",
                                       "--n", "1", "--d", "1"],
    "verify_all_Bii_1_1_1": ["verify", "--suite", "all", "--flavor", "Bii", "--m", "1", "--n", "1",
                             "--d", "1"],
}
