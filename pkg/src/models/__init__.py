# makes 'models' a package so 'from src.models.channel import KrausChannel' works
