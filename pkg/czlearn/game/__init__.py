from czlearn.game.contexts import (
    ContextSchedule,
    FixedContexts,
    UniformBoxContexts,
    UniformContexts,
    context_schedule,
)
from czlearn.game.definition import (
    ConstraintFunction,
    ContextSpace,
    ContinuousContextSpace,
    FiniteContextSpace,
    FunctionGame,
    GameDefinition,
    GameDocument,
    RewardFunction,
    TabularGame,
    context_key,
)
from czlearn.game.engine import RoundRecord, RunStatus, Simulation, Trajectory, run
from czlearn.game.generator import (
    GENERATOR_SCHEME,
    GeneratorParams,
    generate_random_game,
)
