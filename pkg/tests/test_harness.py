from minorsign import Matrix
from minorsign.harness import build_tasks, check_matrix, run_suite


def test_parallel_matches_sequential():
    a = run_suite(3, 4, seed=5, jobs=1).to_json()
    b = run_suite(3, 4, seed=5, jobs=2).to_json()
    assert a == b and a["inconsistencies"] == 0


def test_tasks_split_general_and_symmetric():
    tasks = build_tasks(2, 5, seed=0)
    assert len(tasks) == 2 * 24 * 2
    assert {(t.case, t.count) for t in tasks} == {("general", 3), ("symmetric", 2)}


def test_check_matrix_clean_on_known_matrices():
    assert check_matrix(Matrix([[-1, -2], [-2, -1]])) == []
    assert check_matrix(Matrix.zeros(3)) == []
    assert check_matrix(Matrix([[0, 1], [-1, 0]])) == []
