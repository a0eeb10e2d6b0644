from dataclasses import dataclass


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    instance_set: str
    instance: str
    run: int
    seed: str # 64 位无符号种子, 以字符串保存避免溢出
    best_objective: float | None # 最优可行解的目标值; 无可行解时为空
    best_fitness: float
    feasible: bool
    generations: int
    seconds: float
    monotonicity_violations: int
    size_violations: int


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    instance_set: str
    n_instances: int
    runs: int
    feasibility: float
    cost_or_rent: float # 删失平均值
    uncensored_mean: float | None
    mean_seconds: float


@dataclass(frozen=True)
class ConvergenceRow:
    algorithm: str
    instance: str
    run: int
    generation: int
    best_fitness: float
    mean_fitness: float
    weight: float
    best_feasible_objective: float | None
