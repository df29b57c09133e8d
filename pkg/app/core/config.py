from pydantic_settings import BaseSettings
import os

class Settings(BaseSettings):
    # 应用配置
    APP_NAME: str = os.getenv("APP_NAME", "TandemListDecoder")
    APP_VERSION: str = os.getenv("APP_VERSION", "1.0.0")
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    # 穷举预言机预算
    ORACLE_MAX_STATES: int = int(os.getenv("ORACLE_MAX_STATES", "1000000"))
    ORACLE_MAX_DEPTH: int = int(os.getenv("ORACLE_MAX_DEPTH", "6"))

    # 定重码穷举搜索的长度上限
    CW_MAX_LENGTH: int = int(os.getenv("CW_MAX_LENGTH", "20"))
    CLIQUE_MAX_NODES: int = int(os.getenv("CLIQUE_MAX_NODES", "1000000"))

    # 随机信道与蒙特卡洛
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "2020"))
    MC_SAMPLES: int = int(os.getenv("MC_SAMPLES", "100000"))
    E2E_TRIALS: int = int(os.getenv("E2E_TRIALS", "500"))
    SAMPLING_MAX_ATTEMPTS: int = int(os.getenv("SAMPLING_MAX_ATTEMPTS", "200000"))

    class Config:
        env_file = ".env"

settings = Settings()
