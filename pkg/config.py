import os
from dotenv import load_dotenv

load_dotenv()

# Физика (атомные единицы, ħ = m = 1)
DEFAULT_E2 = 1.0
DEFAULT_TOL = 5e-7
DEFAULT_LAMBDA = 0

# Параметры таблиц
TABLE_DELTAS = (0.001, 0.005, 0.010, 0.020, 0.025)
TABLE1_DIMS = (3, 5)
TABLE_ELLS = (0, 1, 2)
TABLE1_STATES = 4
TABLE2_DIM = 3
TABLE2_SOURCE_DECIMALS = 6
MAX_STATES = 8

# Сетка и сходимость
INITIAL_SPACING = 0.05
MIN_GRID_POINTS = 255
MAX_GRID_POINTS = 2 ** 20
MIN_REFINEMENTS = 3
MAX_BOX_DOUBLINGS = 3
COULOMB_BOX_MIN = 40.0
OSCILLATOR_BOX_MIN = 8.0
OSCILLATOR_BOX_MAX = 30.0

# Квадратура и поиск корней
QUAD_REL_TOL = 1e-10
QUAD_ABS_TOL = 1e-14
QUAD_TAIL_RATIO = 1e-18
QUAD_MAX_PANELS = 64
ROOT_MAX_ITERATIONS = 200
ROOT_JACOBIAN_STEP = 1e-7

# Абсолютная точность бисекции (в единицах 2E)
EIGEN_ABS_TOL = 1e-12

# SUSY
SUSY_DEFAULT_GUESS = (4.0, 0.2)
SUSY_ROOT_TOL = 1e-10

# Окружение
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_TO_FILE = os.getenv('LOG_TO_FILE', '0').lower() in ('1', 'true', 'yes')
MAX_WORKERS = int(os.getenv('MAX_WORKERS', '4'))

# Пути
LOGS_DIR = os.getenv('LOGS_DIR', 'logs')

# Создаем папку для логов только если пишем в файл
if LOG_TO_FILE:
    os.makedirs(LOGS_DIR, exist_ok=True)
