// Reference digits frozen from mpmath (tests/oracles/freeze_oracles.py).
#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

inline const std::map<int, std::string> kWallisTargets = {
    {1, "1.57079632679489661923132169163975144209858469968755291048747229615390820314310449931401741"},
    {2, "1.11072073453959156175397024751517342465365542234392255577134890173910869827486847764383173"},
    {3, "1.41421356237309504880168872420969807856967187537694807317667973799073247846210703885038753"},
    {6, "0.785398163397448309615660845819875721049292349843776455243736148076954101571552249657008706"},
    {7, "2.00000000000000000000000000000000000000000000000000000000000000000000000000000000000000000"},
    {8, "1.02617215297703088887146778087283197497962158819581611962254964666868503175563271341891534"},
    {9, "0.765366864730179543456919968060797733522689124971254082867601271255092067920179384474027571"},
    {10, "0.850108846185369236314752312408458324575892477407398306119963873013628607638469888929000509"},
    {11, "1.84775906502257351225636637879357657364483325172728497223019546256107001500220471742967987"},
    {12, "1.20919957615614523372938550509477048818937749872849371704658995692541545408423592245608333"},
};

// (pi/K) / sin(pi/K)
inline const std::map<int, std::string> kGeneralWallis = {
    {2, "1.57079632679489661923132169163975144209858469968755291048747229615390820314310449931401741"},
    {3, "1.20919957615614523372938550509477048818937749872849371704658995692541545408423592245608333"},
    {4, "1.11072073453959156175397024751517342465365542234392255577134890173910869827486847764383173"},
    {5, "1.06895933211559511342518437250688263990145092526652458600666325637962114967907491322780388"},
    {6, "1.04719755119659774615421446109316762806572313312503527365831486410260546876206966620934494"},
    {7, "1.03437605526679648294530640651248874836425672642733758102833268815259310074862548555207589"},
    {8, "1.02617215297703088887146778087283197497962158819581611962254964666868503175563271341891534"},
    {9, "1.02060026934287410880176586992163268562589402352032771044085021130504813302287650355774304"},
    {10, "1.01664073846305196316190180264843976836636785864423082409646656184999582869053972037321772"},
};

inline const std::map<int, std::string> kCatalanTargets = {
    {4, "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138218"},
    {5, "1.35914091422952261768014373567633124887862354684997978748348381386203831517677379728569109"},
    {15, "0.679570457114761308840071867838165624439311773424989893741741906931019157588386898642845545"},
    {16, "1.64872127070012814684865078781416357165377610071014801157507931164066102119421560863277652"},
    {17, "2.24084453516903241130102773005963790950287493418483352838632504139296833723335688649052692"},
    {18, "1.12452477291271470613383101712680171796526145321460910695483143244801618441172496274288931"},
    {20, "2.00000000000000000000000000000000000000000000000000000000000000000000000000000000000000000"},
};

// ln Gamma(num/den)
inline const std::vector<std::tuple<long, long, std::string>> kLnGamma = {
    {1L, 2L, "0.572364942924700087071713675676529355823647406457655785756811535736068884942413039891811635"},
    {1L, 3L, "0.985420646927767069187174036977961391735556496385885854234757010089404118913760447680376598"},
    {2L, 3L, "0.303150275147523568675862817372011035663493171978306245532198904057380126331455864272302122"},
    {1L, 7L, "1.87916927159583583645595640934507105439954262172033445144182534435180011596049714593526046"},
    {5L, 2L, "0.284682870472919159632494669682701924320137695559894729250145850386775934221632575553700736"},
    {22L, 7L, "0.828930567211941915387599113538774913887880748146783822073037148130914674539640220893624579"},
    {1L, 1000L, "6.90717888538385368251234466807698250215996161744610915294577108000583211008551361799743634"},
    {1000L, 1L, "5905.22042320918121182607691236144078984894240971543259002338751988838413336447889259216209"},
    {123456L, 7L, "1.54805091272965855362388560826376012544635762719674722143994667706758516073764324837609224e+5"},
    {1000000007L, 3L, "6.20821788632357053155378470370926765840769304476013088465210557384526500235700302108918542e+9"},
};

// sin(pi num/den)
inline const std::vector<std::tuple<long, long, std::string>> kSinPi = {
    {1L, 5L, "0.587785252292473129168705954639072768597652437643145991072272480757278474162351957508504050"},
    {2L, 7L, "0.781831482468029808708444526674057750232334518708687528980634958045091731633936441700868007"},
    {1L, 100L, "0.0314107590781282938391836738178293897579257058513379278229674155902563457969681228726367227"},
    {7L, 3L, "0.866025403784438646763723170752936183471402626905190314027903489725966508454400018540573093"},
    {-5L, 11L, "-0.989821441880932732376092037776718787376519371948716687838615444923622365725354098604442340"},
};

inline const std::map<int, std::string> kBernoulli = {
    {2, "1/6"},
    {4, "-1/30"},
    {6, "1/42"},
    {8, "-1/30"},
    {10, "5/66"},
    {12, "-691/2730"},
    {20, "-174611/330"},
    {30, "8615841276005/14322"},
    {50, "495057205241079648212477525/66"},
    {60, "-1215233140483755572040304994079820246041491/56786730"},
};

inline const std::string kPi = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803483";
inline const std::string kE = "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138218";
inline const std::string kLnFactorial1e6 = "1.28155183846581696242510758929658412598732208028237831342705622920363981392648180329120202e+7";
inline const std::string kPiHalf = "1.57079632679489661923132169163975144209858469968755291048747229615390820314310449931401741";
inline const std::string kSqrtEHalf = "0.824360635350064073424325393907081785826888050355074005787539655820330510597107804316388260";

}  // namespace oracle
