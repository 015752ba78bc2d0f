from dotenv import load_dotenv
from src.logger import logger
from src.cli import cli

load_dotenv()


def main():
    logger.debug("🚀 Запуск screened-coulomb")
    try:
        cli(prog_name='screened-coulomb')
    except Exception as e:
        logger.error(f"❌ Критическая ошибка: {e}")
        raise


if __name__ == "__main__":
    main()
