"""
Tests for parallel batch execution.
"""

import time


class TestParallelRunner:
    """Test ParallelRunner class."""

    def test_runner_init(self):
        """Test runner initialization."""
        from betashift.parallel import ParallelRunner

        runner = ParallelRunner(workers=4)
        assert runner.workers == 4

    def test_runner_default_workers(self):
        """Test zero workers means automatic."""
        from betashift.parallel import ParallelRunner

        assert ParallelRunner(workers=0).workers > 0
        assert ParallelRunner().workers > 0

    def test_runner_run_simple(self):
        """Test running simple tasks keeps order."""
        from betashift.parallel import ParallelRunner

        runner = ParallelRunner(workers=2)
        results = runner.run([lambda: 1, lambda: 2, lambda: 3])
        assert results == [1, 2, 3]

    def test_runner_empty(self):
        """Test an empty task list."""
        from betashift.parallel import ParallelRunner

        assert ParallelRunner(workers=2).run([]) == []

    def test_runner_order_with_uneven_durations(self):
        """Test results follow task order, not completion order."""
        from betashift.parallel import ParallelRunner

        def task(n):
            time.sleep(0.01 * (3 - n))
            return n

        results = ParallelRunner(workers=3).run([lambda i=i: task(i) for i in range(3)])
        assert results == [0, 1, 2]

    def test_runner_map(self):
        """Test map function."""
        from betashift.parallel import ParallelRunner

        runner = ParallelRunner(workers=2)
        assert runner.map(lambda x: x * 2, [1, 2, 3, 4]) == [2, 4, 6, 8]

    def test_runner_handles_exceptions(self):
        """Test that exceptions are captured in place."""
        from betashift.parallel import ParallelRunner

        def failing_task():
            raise ValueError("test error")

        results = ParallelRunner(workers=2).run([lambda: 1, failing_task, lambda: 3])
        assert results[0] == 1
        assert isinstance(results[1], ValueError)
        assert results[2] == 3

    def test_runner_compares_pairs(self):
        """Test a batch of comparisons."""
        from betashift.decide import Outcome, compare
        from betashift.parallel import ParallelRunner
        from betashift.seq import parse_generating

        pairs = [("(110)", "(20)"), ("11(10)", "11(110)"), ("1(110)", "11(110)")]
        verdicts = ParallelRunner(workers=3).map(
            lambda pair: compare(parse_generating(pair[0]), parse_generating(pair[1])),
            pairs,
        )
        assert [v.outcome for v in verdicts] == [Outcome.EQUIVALENT, Outcome.DISTINCT, Outcome.UNKNOWN]


class TestRunParallel:
    """Test run_parallel convenience function."""

    def test_run_parallel(self):
        """Test run_parallel function."""
        from betashift.parallel import run_parallel

        tasks = [lambda i=i: i for i in range(5)]
        assert run_parallel(tasks, workers=2) == [0, 1, 2, 3, 4]
